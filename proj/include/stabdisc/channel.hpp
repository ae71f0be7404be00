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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stabdisc/ensemble.hpp"
#include "stabdisc/rational.hpp"
#include "stabdisc/stabilizer_state.hpp"
#include "stabdisc/state_sets.hpp"
#include "stabdisc/statevector.hpp"

namespace stabdisc {

/// Pauli expansion of a Hermitian operator: unsigned letters -> coefficient.
using PauliExpansion = std::map<std::string, Rational>;

/// Adds scale * |s><s| = scale * 2^-n sum_{g in S} g.
inline void add_projector(PauliExpansion &acc, const StabilizerState &s, const Rational &scale) {
    const auto &gens = s.generators();
    const std::size_t n = s.num_qubits();
    const Rational w = scale * dyadic(static_cast<unsigned>(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto g = PauliOperator::identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) {
                g = g * gens[i];
            }
        }
        acc[g.unsigned_part().str()] += Rational(g.sign()) * w;
    }
}

inline void drop_zeros(PauliExpansion &acc) {
    std::erase_if(acc, [](const auto &kv) { return kv.second == Rational(0); });
}

struct KrausImage {
    std::size_t kraus = 0;  // 0..5 for the rank-one projectors, 6 for the complement
    Rational weight;
    StabilizerState state;
};

/// Output of the channel on a pure stabilizer input, computed exactly:
/// weights |<psi_mu|phi>|^2 for the six projectors, and for the complement
/// the projection onto Z1Z2 = Z2Z3 = +1.
inline std::vector<KrausImage> cspo_channel_output(const StabilizerState &phi) {
    if (phi.num_qubits() != 3) {
        throw DimensionError("the channel acts on three qubits");
    }
    std::vector<KrausImage> out;
    const auto six = six_state_set();
    for (std::size_t mu = 0; mu < 6; ++mu) {
        const auto &psi = six.items()[mu].mixture.front().state;
        Rational w = overlap_squared(psi, phi);
        if (w != Rational(0)) {
            out.push_back({mu, w, psi});
        }
    }
    const auto zz12 = PauliOperator::from_string("ZZI");
    const auto zz23 = PauliOperator::from_string("IZZ");
    Rational w = outcome_probability(phi, zz12, 0);
    if (w != Rational(0)) {
        auto mid = measure_pauli(phi, zz12, 0).post;
        Rational w2 = outcome_probability(mid, zz23, 0);
        if (w2 != Rational(0)) {
            out.push_back({6, w * w2, measure_pauli(mid, zz23, 0).post});
        }
    }
    return out;
}

struct CspoReport {
    bool complement_identity = false;
    std::size_t inputs = 0;
    std::size_t kraus_operators = 0;
    std::size_t images_checked = 0;  // nonzero Kraus images
    std::vector<std::string> failures;
    std::string note;
    bool ok() const { return complement_identity && failures.empty(); }
};

/// Checks the channel E(rho) = sum_mu P_mu rho P_mu + C rho C with P_mu the
/// six-state projectors and C = 1 - sum_mu P_mu: C equals |000><000| +
/// |111><111| exactly, and E maps each pure 3-qubit stabilizer state to a
/// convex mixture of pure stabilizer states. The exact images are
/// cross-checked against dense Kraus matrices.
inline CspoReport cspo_channel_check() {
    CspoReport rep;
    rep.kraus_operators = 7;

    PauliExpansion sum;
    const auto six = six_state_set();
    for (const auto &item : six.items()) {
        add_projector(sum, item.mixture.front().state, Rational(1));
    }
    PauliExpansion complement;
    complement[PauliOperator::identity(3).str()] = Rational(1);
    for (const auto &[k, v] : sum) {
        complement[k] -= v;
    }
    PauliExpansion expected;
    add_projector(expected, StabilizerState::from_kets("000"), Rational(1));
    add_projector(expected, StabilizerState::from_kets("111"), Rational(1));
    drop_zeros(complement);
    drop_zeros(expected);
    rep.complement_identity = complement == expected;

    std::vector<Eigen::MatrixXcd> kraus;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(8, 8);
    for (const auto &item : six.items()) {
        const auto v = to_statevector(item.mixture.front().state);
        Eigen::Map<const Eigen::VectorXcd> vm(v.amplitudes().data(), 8);
        Eigen::MatrixXcd proj = vm * vm.adjoint();
        kraus.push_back(proj);
        c -= proj;
    }
    kraus.push_back(c);

    for (const auto &phi : enumerate_pure_stabilizer_states(3)) {
        ++rep.inputs;
        const auto images = cspo_channel_output(phi);
        Rational total(0);
        for (const auto &img : images) {
            total += img.weight;
        }
        std::string name;
        for (const auto &g : phi.canonical_generators()) {
            name += (name.empty() ? "" : ",") + g.str();
        }
        if (total != Rational(1)) {
            rep.failures.push_back("weights do not sum to 1 for input " + name);
        }
        const auto v = to_statevector(phi);
        Eigen::Map<const Eigen::VectorXcd> vm(v.amplitudes().data(), 8);
        for (std::size_t k = 0; k < kraus.size(); ++k) {
            Eigen::VectorXcd out = kraus[k] * vm;
            const double w = out.squaredNorm();
            auto exact = std::find_if(images.begin(), images.end(), [&](const auto &i) { return i.kraus == k; });
            if (w < 1e-12) {
                if (exact != images.end()) {
                    rep.failures.push_back("dense image vanishes but exact image does not");
                }
                continue;
            }
            ++rep.images_checked;
            std::vector<Amplitude> amps(out.data(), out.data() + out.size());
            auto dense = StateVector::from_amplitudes(3, amps);
            dense.normalize();
            auto found = identify_stabilizer_state(dense);
            if (!found) {
                rep.failures.push_back("Kraus image " + std::to_string(k) + " is not a stabilizer state");
                continue;
            }
            if (exact == images.end() || std::abs(to_double(exact->weight) - w) > 1e-12 || exact->state != *found) {
                rep.failures.push_back("exact and dense images disagree for Kraus " + std::to_string(k));
            }
        }
    }
    rep.note =
        "stabilizer operations cannot implement this channel: it would perfectly discriminate the six-state set, "
        "which the first-round analysis rules out";
    return rep;
}

}  // namespace stabdisc
