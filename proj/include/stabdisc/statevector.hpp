// Copyright 2026 The stabdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "stabdisc/clifford.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/pauli.hpp"
#include "stabdisc/stabilizer_state.hpp"

namespace stabdisc {

using Amplitude = std::complex<double>;

/// Numerical tolerances of the dense oracle.
struct Tolerances {
    double algebraic = 1e-12;
    double entropy = 1e-9;
    double eigenvalue_floor = 1e-10;
};

inline constexpr std::size_t kMaxDenseQubits = 12;

/// Dense 2^n amplitude vector. Qubit 0 is the leftmost tensor factor, so it
/// is the most significant bit of the basis index: |q0 q1 ... q_{n-1}>.
class StateVector {
   public:
    StateVector() = default;

    /// |0...0>.
    explicit StateVector(std::size_t num_qubits) : n_(num_qubits) {
        if (num_qubits > kMaxDenseQubits) {
            throw DimensionError("dense simulation is limited to " + std::to_string(kMaxDenseQubits) +
                                 " qubits");
        }
        amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
        amps_[0] = 1.0;
    }

    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        StateVector v(num_qubits);
        if (index >= v.dim()) {
            throw IndexError("basis index out of range");
        }
        v.amps_[0] = 0.0;
        v.amps_[index] = 1.0;
        return v;
    }

    static StateVector from_amplitudes(std::size_t num_qubits, std::vector<Amplitude> amps) {
        StateVector v(num_qubits);
        if (amps.size() != v.dim()) {
            throw DimensionError("amplitude count does not match 2^n");
        }
        v.amps_ = std::move(amps);
        return v;
    }

    /// Product state from symbols '0', '1', '+', '-', 'r' (|+i>), 'l' (|-i>).
    static StateVector from_kets(std::string_view kets) {
        const double h = 1.0 / std::sqrt(2.0);
        StateVector v(0);
        v.amps_ = {Amplitude{1.0, 0.0}};
        for (char c : kets) {
            std::array<Amplitude, 2> ket{};
            switch (c) {
                case '0':
                    ket = {1.0, 0.0};
                    break;
                case '1':
                    ket = {0.0, 1.0};
                    break;
                case '+':
                    ket = {h, h};
                    break;
                case '-':
                    ket = {h, -h};
                    break;
                case 'r':
                    ket = {Amplitude{h, 0}, Amplitude{0, h}};
                    break;
                case 'l':
                    ket = {Amplitude{h, 0}, Amplitude{0, -h}};
                    break;
                default:
                    throw ParseError("bad ket symbol '" + std::string(1, c) + "'");
            }
            std::vector<Amplitude> next(v.amps_.size() * 2);
            for (std::size_t k = 0; k < v.amps_.size(); ++k) {
                next[2 * k] = v.amps_[k] * ket[0];
                next[2 * k + 1] = v.amps_[k] * ket[1];
            }
            v.amps_ = std::move(next);
            ++v.n_;
        }
        return v;
    }

    std::size_t num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }
    std::vector<Amplitude> &amplitudes() { return amps_; }
    Amplitude operator[](std::size_t k) const { return amps_[k]; }
    Amplitude &operator[](std::size_t k) { return amps_[k]; }

    /// Bit mask of qubit q inside a basis index.
    std::size_t mask(std::size_t q) const { return std::size_t{1} << (n_ - 1 - q); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    void scale(Amplitude c) {
        for (auto &a : amps_) {
            a *= c;
        }
    }

    void normalize() {
        double nrm = std::sqrt(norm_squared());
        if (nrm == 0.0) {
            throw DomainError("cannot normalize the zero vector");
        }
        scale(1.0 / nrm);
    }

    /// Rotates the global phase so the first significant amplitude is real
    /// and positive.
    void fix_global_phase(double tol = 1e-9) {
        for (const auto &a : amps_) {
            if (std::abs(a) > tol) {
                scale(std::conj(a) / std::abs(a));
                return;
            }
        }
    }

    StateVector kron(const StateVector &other) const {
        StateVector r(n_ + other.n_);
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < other.dim(); ++j) {
                r.amps_[i * other.dim() + j] = amps_[i] * other.amps_[j];
            }
        }
        return r;
    }

    /// Index of the basis state holding all weight, if any (within tol).
    std::optional<std::size_t> as_basis_state(double tol = 1e-12) const {
        std::optional<std::size_t> hit;
        for (std::size_t k = 0; k < dim(); ++k) {
            double w = std::norm(amps_[k]);
            if (std::abs(w - 1.0) <= tol) {
                hit = k;
            } else if (w > tol) {
                return std::nullopt;
            }
        }
        return hit;
    }

   private:
    std::size_t n_ = 0;
    std::vector<Amplitude> amps_;
};

/// Ket label of a basis index, e.g. "010".
inline std::string basis_label(std::size_t num_qubits, std::size_t index) {
    std::string s(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if ((index >> (num_qubits - 1 - q)) & 1U) {
            s[q] = '1';
        }
    }
    return s;
}

inline Amplitude inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("inner product of different dimensions");
    }
    Amplitude s{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

inline double overlap_squared(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

/// Controlled-controlled-Hadamard: H on target exactly when both controls
/// carry their polarity bit.
struct CCH {
    std::size_t control1 = 0;
    bool polarity1 = true;
    std::size_t control2 = 1;
    bool polarity2 = true;
    std::size_t target = 2;
};

using DenseGate = std::variant<Gate, CCH>;

namespace detail {

inline void check_cch(const CCH &g, std::size_t n) {
    if (g.control1 >= n || g.control2 >= n || g.target >= n) {
        throw IndexError("CCH qubit out of range");
    }
    if (g.control1 == g.control2 || g.control1 == g.target || g.control2 == g.target) {
        throw IndexError("CCH qubits collide");
    }
}

inline void apply_h_pair(std::vector<Amplitude> &amps, std::size_t k0, std::size_t k1) {
    static const double h = 1.0 / std::sqrt(2.0);
    Amplitude a = amps[k0];
    Amplitude b = amps[k1];
    amps[k0] = h * (a + b);
    amps[k1] = h * (a - b);
}

}  // namespace detail

inline StateVector apply_gate(StateVector v, const Gate &g) {
    validate_gate(g, v.num_qubits());
    auto &amps = v.amplitudes();
    const std::size_t m0 = v.mask(g.q0);
    const std::size_t m1 = v.mask(g.q1);
    const Amplitude i_unit{0.0, 1.0};
    for (std::size_t k = 0; k < v.dim(); ++k) {
        switch (g.kind) {
            case GateKind::H:
                if (!(k & m0)) {
                    detail::apply_h_pair(amps, k, k | m0);
                }
                break;
            case GateKind::S:
                if (k & m0) {
                    amps[k] *= i_unit;
                }
                break;
            case GateKind::X:
                if (!(k & m0)) {
                    std::swap(amps[k], amps[k | m0]);
                }
                break;
            case GateKind::Z:
                if (k & m0) {
                    amps[k] = -amps[k];
                }
                break;
            case GateKind::CNOT:
                if ((k & m0) && !(k & m1)) {
                    std::swap(amps[k], amps[k | m1]);
                }
                break;
            case GateKind::CZ:
                if ((k & m0) && (k & m1)) {
                    amps[k] = -amps[k];
                }
                break;
        }
    }
    return v;
}

inline StateVector apply_gate(StateVector v, const CCH &g) {
    detail::check_cch(g, v.num_qubits());
    auto &amps = v.amplitudes();
    const std::size_t c1 = v.mask(g.control1);
    const std::size_t c2 = v.mask(g.control2);
    const std::size_t t = v.mask(g.target);
    for (std::size_t k = 0; k < v.dim(); ++k) {
        if ((k & t) || (((k & c1) != 0) != g.polarity1) || (((k & c2) != 0) != g.polarity2)) {
            continue;
        }
        detail::apply_h_pair(amps, k, k | t);
    }
    return v;
}

inline StateVector apply_gate(StateVector v, const DenseGate &g) {
    return std::visit([&](const auto &gate) { return apply_gate(std::move(v), gate); }, g);
}

inline StateVector apply_gates(StateVector v, std::span<const DenseGate> gates) {
    for (const auto &g : gates) {
        v = apply_gate(std::move(v), g);
    }
    return v;
}

inline StateVector apply_circuit(StateVector v, const CliffordCircuit &c) {
    if (c.num_qubits() != v.num_qubits()) {
        throw DimensionError("circuit and state widths differ");
    }
    for (const auto &g : c.gates()) {
        v = apply_gate(std::move(v), g);
    }
    return v;
}

/// The three-gate CCH circuit that maps each of the six states
/// |+10>, |0+1>, |10+>, |-10>, |0-1>, |10-> to a distinct basis state.
/// Qubits are 0-based here.
inline std::vector<DenseGate> readout_circuit() {
    return {
        CCH{0, true, 1, false, 2},
        CCH{0, false, 2, true, 1},
        CCH{1, true, 2, false, 0},
    };
}

/// P|v> for any Pauli (phase included).
inline StateVector apply_pauli(const StateVector &v, const PauliOperator &p) {
    if (p.num_qubits() != v.num_qubits()) {
        throw DimensionError("Pauli and state widths differ");
    }
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    for (std::size_t q = 0; q < p.num_qubits(); ++q) {
        if (p.x(q)) {
            xmask |= v.mask(q);
        }
        if (p.z(q)) {
            zmask |= v.mask(q);
        }
    }
    // Y|b> = i(-1)^b |1-b>, so the letters contribute i^(#Y) (-1)^(k.z).
    static const std::array<Amplitude, 4> kPowers{Amplitude{1, 0}, Amplitude{0, 1}, Amplitude{-1, 0},
                                                  Amplitude{0, -1}};
    const Amplitude global = kPowers[static_cast<std::size_t>((p.phase_exp() + p.y_count()) & 3)];
    StateVector out = v;
    auto &dst = out.amplitudes();
    for (std::size_t k = 0; k < v.dim(); ++k) {
        double s = (std::popcount(k & zmask) & 1) ? -1.0 : 1.0;
        dst[k ^ xmask] = global * s * v[k];
    }
    return out;
}

struct Projection {
    double prob = 0.0;
    /// Normalized post-measurement state; empty when prob is below tolerance.
    std::optional<StateVector> post;
};

/// Applies Pi_a = (1 + (-1)^a P)/2.
inline Projection project_pauli(const StateVector &v, const PauliOperator &p, int a,
                                const Tolerances &tol = {}) {
    if (!p.is_hermitian()) {
        throw NonHermitian("projector of non-Hermitian " + p.str());
    }
    StateVector pv = apply_pauli(v, p);
    StateVector w = v;
    const double s = a == 0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        w[k] = 0.5 * (v[k] + s * pv[k]);
    }
    Projection out;
    out.prob = w.norm_squared();
    if (out.prob >= tol.algebraic) {
        w.scale(1.0 / std::sqrt(out.prob));
        out.post = std::move(w);
    }
    return out;
}

/// Dense amplitudes of a stabilizer state, with the global phase fixed so the
/// first nonzero amplitude is real positive.
inline StateVector to_statevector(const StabilizerState &state) {
    const std::size_t n = state.num_qubits();
    StateVector probe(n);
    for (std::size_t k = 0; k < probe.dim(); ++k) {
        StateVector v = StateVector::basis(n, k);
        for (const auto &g : state.generators()) {
            StateVector gv = apply_pauli(v, g);
            for (std::size_t i = 0; i < v.dim(); ++i) {
                v[i] = 0.5 * (v[i] + gv[i]);
            }
        }
        if (v.norm_squared() > 1e-6) {
            v.normalize();
            v.fix_global_phase();
            return v;
        }
    }
    throw DomainError("stabilizer projector annihilated every basis state");
}

/// Dense matrix of any operator given by its action on basis vectors.
template <class Apply>
Eigen::MatrixXcd dense_matrix(std::size_t num_qubits, Apply &&apply) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        StateVector col = apply(StateVector::basis(num_qubits, k));
        for (std::size_t r = 0; r < dim; ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = col[r];
        }
    }
    return m;
}

inline Eigen::MatrixXcd pauli_matrix(const PauliOperator &p) {
    return dense_matrix(p.num_qubits(), [&](const StateVector &v) { return apply_pauli(v, p); });
}

inline Eigen::MatrixXcd gate_matrix(std::size_t num_qubits, const DenseGate &g) {
    return dense_matrix(num_qubits, [&](const StateVector &v) { return apply_gate(v, g); });
}

/// Recovers the stabilizer description of a dense state, if it is one.
/// Scans all 4^n Paulis, so keep n small.
inline std::optional<StabilizerState> identify_stabilizer_state(const StateVector &v, double tol = 1e-9) {
    const std::size_t n = v.num_qubits();
    if (n == 0 || n > 8) {
        throw DimensionError("stabilizer identification supports 1..8 qubits");
    }
    if (std::abs(v.norm_squared() - 1.0) > tol) {
        return std::nullopt;
    }
    std::vector<PauliOperator> gens;
    for (PauliOperator p : enumerate_hermitian_paulis(n, false)) {
        double e = inner(v, apply_pauli(v, p)).real();
        if (std::abs(std::abs(e) - 1.0) > tol) {
            continue;
        }
        PauliOperator signed_p = e > 0 ? p : p.negated();
        std::vector<PauliOperator> trial = gens;
        trial.push_back(signed_p);
        if (detail::row_reduce(trial).size() == trial.size()) {
            gens.push_back(signed_p);
            if (gens.size() == n) {
                break;
            }
        }
    }
    if (gens.size() != n) {
        return std::nullopt;
    }
    auto state = StabilizerState::from_generators(std::move(gens));
    if (std::abs(overlap_squared(to_statevector(state), v) - 1.0) > tol) {
        return std::nullopt;
    }
    return state;
}

/// Dense 2^n x 2^n density matrix.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    explicit DensityMatrix(std::size_t num_qubits)
        : n_(num_qubits),
          rho_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << num_qubits),
                                      static_cast<Eigen::Index>(std::size_t{1} << num_qubits))) {
        if (num_qubits > 6) {
            throw DimensionError("density matrices are limited to 6 qubits");
        }
    }

    static DensityMatrix pure(const StateVector &v) {
        DensityMatrix d(v.num_qubits());
        d.add_pure(1.0, v);
        return d;
    }

    /// sum_i w_i |v_i><v_i| (weights are not renormalized).
    static DensityMatrix mixture(const std::vector<std::pair<double, StateVector>> &terms) {
        if (terms.empty()) {
            throw DimensionError("empty mixture");
        }
        DensityMatrix d(terms.front().second.num_qubits());
        for (const auto &[w, v] : terms) {
            d.add_pure(w, v);
        }
        return d;
    }

    void add_pure(double weight, const StateVector &v) {
        if (v.num_qubits() != n_) {
            throw DimensionError("mixture components differ in width");
        }
        Eigen::Map<const Eigen::VectorXcd> col(v.amplitudes().data(), static_cast<Eigen::Index>(v.dim()));
        rho_.noalias() += weight * col * col.adjoint();
    }

    std::size_t num_qubits() const { return n_; }
    const Eigen::MatrixXcd &matrix() const { return rho_; }

    Amplitude trace() const { return rho_.trace(); }

    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

    /// Throws DomainError unless Hermitian, unit trace and positive
    /// semidefinite within tolerance.
    void validate(const Tolerances &tol = {}) const {
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol.algebraic) {
            throw DomainError("density matrix is not Hermitian");
        }
        if (std::abs(trace() - Amplitude{1.0, 0.0}) > tol.algebraic) {
            throw DomainError("density matrix trace is not 1");
        }
        if (eigenvalues().minCoeff() < -tol.eigenvalue_floor) {
            throw DomainError("density matrix has a negative eigenvalue");
        }
    }

   private:
    std::size_t n_ = 0;
    Eigen::MatrixXcd rho_;
};

/// S(rho) = -Tr(rho log2 rho), in bits, summing over eigenvalues > 1e-12.
inline double von_neumann_entropy(const DensityMatrix &rho, const Tolerances &tol = {}) {
    rho.validate(tol);
    double s = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 1e-12) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

}  // namespace stabdisc
