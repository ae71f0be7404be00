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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stabdisc/clifford.hpp"
#include "stabdisc/ensemble.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/stabilizer_state.hpp"

namespace stabdisc {

/// Kets of the six-state set in label order 1..6.
inline const std::array<std::string_view, 6> &six_state_kets() {
    static const std::array<std::string_view, 6> kets{"+10", "0+1", "10+", "-10", "0-1", "10-"};
    return kets;
}

/// Label of psi_(k,s) for k in {1,2,3}, s in {0,1}.
inline int six_state_label(int k, int s) { return 3 * s + k; }

/// psi_(k,s) = Z_k^s H_k X_{k+1} |000>, with k+1 taken cyclically on {1,2,3}.
inline StabilizerState psi_ks(int k, int s) {
    if (k < 1 || k > 3 || s < 0 || s > 1) {
        throw IndexError("psi_(k,s) needs k in 1..3 and s in 0..1");
    }
    const auto qk = static_cast<std::size_t>(k - 1);
    const auto next = static_cast<std::size_t>(k % 3);
    CliffordCircuit c(3, {Gate::x(next), Gate::h(qk)});
    if (s == 1) {
        c.append(Gate::z(qk));
    }
    return apply_clifford(StabilizerState::zero(3), c);
}

inline LabeledEnsemble six_state_set() {
    std::vector<StabilizerState> states;
    for (auto k : six_state_kets()) {
        states.push_back(StabilizerState::from_kets(k));
    }
    return LabeledEnsemble::uniform_pure(states, 1);
}

/// rho_0 = (|0+><0+| + |+0><+0|)/2 with label 0, rho_1 = (|11><11| + |--><--|)/2 with label 1.
inline LabeledEnsemble mixed_pair() {
    const Rational half(1, 2);
    auto ket = [](std::string_view k) { return StabilizerState::from_kets(k); };
    return LabeledEnsemble({
        {0, half, {{half, ket("0+")}, {half, ket("+0")}}},
        {1, half, {{half, ket("11")}, {half, ket("--")}}},
    });
}

/// rho_s = (1/3) sum_k |psi_(k,s)><psi_(k,s)|, labels 0 and 1.
inline LabeledEnsemble data_hiding_states() {
    const Rational third(1, 3);
    std::vector<EnsembleItem> items;
    for (int s = 0; s < 2; ++s) {
        EnsembleItem item{s, Rational(1, 2), {}};
        for (int k = 1; k <= 3; ++k) {
            item.mixture.push_back({third, psi_ks(k, s)});
        }
        items.push_back(std::move(item));
    }
    return LabeledEnsemble(std::move(items));
}

// ---------------------------------------------------------------------------
// Boolean functions

/// f : {0,1}^n -> {0,1}. Inputs are n-bit integers with beta_1 as the most
/// significant bit.
class BooleanFunction {
   public:
    static constexpr std::size_t kMaxInputs = 16;

    BooleanFunction(std::size_t num_inputs, std::vector<std::uint8_t> table)
        : n_(num_inputs), table_(std::move(table)) {
        if (n_ == 0 || n_ > kMaxInputs) {
            throw DimensionError("Boolean functions need 1.." + std::to_string(kMaxInputs) + " inputs");
        }
        if (table_.size() != (std::size_t{1} << n_)) {
            throw DimensionError("truth table length must be 2^n");
        }
        for (auto &v : table_) {
            v = v != 0 ? 1 : 0;
        }
    }

    /// Truth table as a string of '0'/'1' of length 2^n, entry 0 first.
    static BooleanFunction from_string(std::string_view bits) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < bits.size()) {
            ++n;
        }
        std::vector<std::uint8_t> table;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw ParseError("truth table may contain only 0 and 1");
            }
            table.push_back(c == '1' ? 1 : 0);
        }
        return {n, std::move(table)};
    }

    /// f(beta) = beta_1 beta_2 + beta_3 beta_4 + ... for even n.
    static BooleanFunction inner_product(std::size_t num_inputs) {
        if (num_inputs == 0 || num_inputs % 2 != 0) {
            throw PreconditionError("the inner-product function needs an even input count");
        }
        std::vector<std::uint8_t> table(std::size_t{1} << num_inputs);
        for (std::size_t b = 0; b < table.size(); ++b) {
            unsigned v = 0;
            for (std::size_t i = 0; i < num_inputs; i += 2) {
                v ^= bit(num_inputs, b, i) & bit(num_inputs, b, i + 1);
            }
            table[b] = static_cast<std::uint8_t>(v);
        }
        return {num_inputs, std::move(table)};
    }

    /// Bit beta_{i+1} (0-based i) of an n-bit input.
    static unsigned bit(std::size_t n, std::size_t input, std::size_t i) {
        return static_cast<unsigned>((input >> (n - 1 - i)) & 1U);
    }

    std::size_t num_inputs() const { return n_; }
    std::size_t table_size() const { return table_.size(); }
    unsigned operator()(std::size_t input) const { return table_.at(input); }

    std::string str() const {
        std::string out;
        for (auto v : table_) {
            out += v != 0 ? '1' : '0';
        }
        return out;
    }

    /// Inputs with f = value, ascending.
    std::vector<std::size_t> preimage(unsigned value) const {
        std::vector<std::size_t> out;
        for (std::size_t b = 0; b < table_.size(); ++b) {
            if (table_[b] == value) {
                out.push_back(b);
            }
        }
        return out;
    }

    friend bool operator==(const BooleanFunction &, const BooleanFunction &) = default;

   private:
    std::size_t n_;
    std::vector<std::uint8_t> table_;
};

/// Some beta with f(beta) = 0 and f(beta + gamma) = 1, if one exists.
inline std::optional<std::size_t> crossing_point(const BooleanFunction &f, std::size_t gamma) {
    for (std::size_t b = 0; b < f.table_size(); ++b) {
        if (f(b) == 0 && f(b ^ gamma) == 1) {
            return b;
        }
    }
    return std::nullopt;
}

/// True iff for every nonzero gamma the derivative beta -> f(beta) + f(beta + gamma)
/// is non-constant.
inline bool has_vanishing_linear_structure(const BooleanFunction &f) {
    for (std::size_t gamma = 1; gamma < f.table_size(); ++gamma) {
        const unsigned d0 = f(0) ^ f(gamma);
        bool varies = false;
        for (std::size_t b = 1; b < f.table_size() && !varies; ++b) {
            varies = (f(b) ^ f(b ^ gamma)) != d0;
        }
        if (!varies) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// The 3n-qubit family

/// Block contents of one member: rotation r puts the x-basis block alpha at
/// block r, beta_0 at block r + 2 and beta_1 at block r + 1 (mod 3).
/// Rotation 0 is |alpha>_x |beta_1>_z |beta_0>_z.
struct GeneralizedMember {
    int rotation = 0;
    std::size_t alpha = 0;
    std::size_t beta0 = 0;
    std::size_t beta1 = 0;

    std::size_t alpha_block() const { return static_cast<std::size_t>(rotation); }
    std::size_t beta1_block() const { return static_cast<std::size_t>((rotation + 1) % 3); }
    std::size_t beta0_block() const { return static_cast<std::size_t>((rotation + 2) % 3); }
};

struct GeneralizedSet {
    std::size_t n = 0;
    std::vector<GeneralizedMember> members;
    LabeledEnsemble ensemble;  // labels 1..size in member order
};

/// |alpha>_x at block a, |beta_1>_z and |beta_0>_z at the other two blocks.
inline StabilizerState generalized_state(std::size_t n, const GeneralizedMember &m) {
    const std::size_t total = 3 * n;
    std::vector<PauliOperator> gens;
    auto add_block = [&](std::size_t block, std::size_t bits, char letter) {
        for (std::size_t i = 0; i < n; ++i) {
            auto g = PauliOperator::single(total, block * n + i, letter);
            gens.push_back(BooleanFunction::bit(n, bits, i) != 0 ? g.negated() : g);
        }
    };
    add_block(m.alpha_block(), m.alpha, 'X');
    add_block(m.beta1_block(), m.beta1, 'Z');
    add_block(m.beta0_block(), m.beta0, 'Z');
    return StabilizerState::from_generators(std::move(gens));
}

/// All members ordered by alpha, then rotation, then beta_0, then beta_1.
/// With check_structure = false the vanishing-linear-structure precondition
/// is skipped, which allows the degenerate n = 1 analogue.
inline GeneralizedSet generalized_set(std::size_t n, const BooleanFunction &f, bool check_structure = true) {
    if (f.num_inputs() != n) {
        throw DimensionError("Boolean function input count differs from n");
    }
    if (3 * n > PauliOperator::kMaxQubits) {
        throw DimensionError("3n exceeds the supported qubit count");
    }
    if (check_structure && !has_vanishing_linear_structure(f)) {
        throw PreconditionError("f has a nonvanishing linear structure");
    }
    const auto f0 = f.preimage(0);
    const auto f1 = f.preimage(1);
    if (f0.empty() || f1.empty()) {
        throw PreconditionError("f is constant");
    }
    GeneralizedSet out;
    out.n = n;
    std::vector<StabilizerState> states;
    for (std::size_t alpha = 0; alpha < (std::size_t{1} << n); ++alpha) {
        for (int r = 0; r < 3; ++r) {
            for (auto b0 : f0) {
                for (auto b1 : f1) {
                    GeneralizedMember m{r, alpha, b0, b1};
                    states.push_back(generalized_state(n, m));
                    out.members.push_back(m);
                }
            }
        }
    }
    out.ensemble = LabeledEnsemble::uniform_pure(states, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration and two-qubit classification

namespace detail {

inline std::vector<Gate> generating_gates(std::size_t n) {
    std::vector<Gate> gates;
    for (std::size_t q = 0; q < n; ++q) {
        gates.push_back(Gate::h(q));
        gates.push_back(Gate::s(q));
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b) {
                gates.push_back(Gate::cnot(a, b));
            }
        }
    }
    return gates;
}

}  // namespace detail

/// Every pure n-qubit stabilizer state (n <= 3), in breadth-first order from
/// |0...0> under H, S and CNOT.
inline std::vector<StabilizerState> enumerate_pure_stabilizer_states(std::size_t n) {
    if (n == 0 || n > 3) {
        throw DimensionError("enumeration supports 1 to 3 qubits");
    }
    const auto gates = detail::generating_gates(n);
    std::vector<StabilizerState> out{StabilizerState::zero(n)};
    std::unordered_map<std::string, std::size_t> seen{{out.front().canonical_key(), 0}};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const Gate &g : gates) {
            auto next = apply_gate(out[head], g);
            if (seen.emplace(next.canonical_key(), out.size()).second) {
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

enum class BasisForm { Product, Adaptive };

inline std::string_view basis_form_name(BasisForm f) { return f == BasisForm::Product ? "product" : "adaptive"; }

/// Result of classify_two_qubit_basis. transform maps states[assignment[j]]
/// onto target j of the form: |00>, |01>, |10>, |11> (product) or |00>,
/// |01>, |1+>, |1-> (adaptive). The input states are then stabilized by
/// <g1, g2>, <g1, -g2>, <-g1, g3>, <-g1, -g3> in assignment order.
struct BasisClassification {
    BasisForm form = BasisForm::Product;
    CliffordCircuit transform{2};
    std::array<std::size_t, 4> assignment{};
    PauliOperator g1{2};
    PauliOperator g2{2};
    PauliOperator g3{2};
};

namespace detail {

inline std::array<StabilizerState, 4> basis_targets(BasisForm form) {
    auto k = [](std::string_view s) { return StabilizerState::from_kets(s); };
    if (form == BasisForm::Product) {
        return {k("00"), k("01"), k("10"), k("11")};
    }
    return {k("00"), k("01"), k("1+"), k("1-")};
}

inline std::string set_key(std::vector<std::string> keys) {
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (auto &k : keys) {
        out += k;
    }
    return out;
}

/// Clifford orbit of a target basis: set key -> circuit C with C(targets) = set.
inline const std::unordered_map<std::string, CliffordCircuit> &basis_orbit(BasisForm form) {
    static const auto build = [](BasisForm f) {
        std::unordered_map<std::string, CliffordCircuit> orbit;
        const auto gates = generating_gates(2);
        std::deque<std::pair<std::array<StabilizerState, 4>, CliffordCircuit>> queue;
        auto start = basis_targets(f);
        auto key_of = [](const std::array<StabilizerState, 4> &set) {
            std::vector<std::string> keys;
            for (const auto &s : set) {
                keys.push_back(s.canonical_key());
            }
            return set_key(std::move(keys));
        };
        orbit.emplace(key_of(start), CliffordCircuit(2));
        queue.emplace_back(start, CliffordCircuit(2));
        while (!queue.empty()) {
            auto [set, circuit] = std::move(queue.front());
            queue.pop_front();
            for (const Gate &g : gates) {
                auto next = set;
                for (auto &s : next) {
                    s = apply_gate(s, g);
                }
                auto key = key_of(next);
                if (orbit.contains(key)) {
                    continue;
                }
                auto c = circuit;
                c.append(g);
                orbit.emplace(std::move(key), c);
                queue.emplace_back(std::move(next), std::move(c));
            }
        }
        return orbit;
    };
    static const auto product = build(BasisForm::Product);
    static const auto adaptive = build(BasisForm::Adaptive);
    return form == BasisForm::Product ? product : adaptive;
}

}  // namespace detail

inline BasisClassification classify_two_qubit_basis(const std::vector<StabilizerState> &states) {
    if (states.size() != 4) {
        throw NotABasis("a two-qubit basis has exactly four states");
    }
    std::vector<std::string> keys;
    for (const auto &s : states) {
        if (s.num_qubits() != 2) {
            throw NotABasis("basis states must have two qubits");
        }
        keys.push_back(s.canonical_key());
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (overlap_squared(states[i], states[j]) != Rational(0)) {
                throw NotOrthogonal("states " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are not orthogonal");
            }
        }
    }
    const auto key = detail::set_key(keys);
    for (BasisForm form : {BasisForm::Product, BasisForm::Adaptive}) {
        const auto &orbit = detail::basis_orbit(form);
        auto hit = orbit.find(key);
        if (hit == orbit.end()) {
            continue;
        }
        BasisClassification out;
        out.form = form;
        out.transform = hit->second.inverse();
        const auto targets = detail::basis_targets(form);
        for (std::size_t i = 0; i < 4; ++i) {
            auto image = apply_clifford(states[i], out.transform);
            for (std::size_t j = 0; j < 4; ++j) {
                if (image == targets[j]) {
                    out.assignment[j] = i;
                }
            }
        }
        const auto back = hit->second;
        out.g1 = back.conjugate(PauliOperator::from_string("ZI"));
        out.g2 = back.conjugate(PauliOperator::from_string("IZ"));
        out.g3 = back.conjugate(PauliOperator::from_string(form == BasisForm::Product ? "IZ" : "IX"));
        return out;
    }
    throw NotABasis("orthogonal set matches neither basis form");
}

}  // namespace stabdisc
