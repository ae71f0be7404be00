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

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stabdisc/ensemble.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/pauli.hpp"
#include "stabdisc/rational.hpp"
#include "stabdisc/stabilizer_state.hpp"
#include "stabdisc/statevector.hpp"

namespace stabdisc {

/// x log2 x with 0 log 0 = 0.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// H_b(x) = -x log2 x - (1 - x) log2 (1 - x).
inline double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("binary entropy needs 0 <= x <= 1");
    }
    return -xlog2x(x) - xlog2x(1.0 - x);
}

/// Shannon entropy of the label distribution, in bits.
inline double prior_entropy(const LabeledEnsemble &e) {
    double h = 0.0;
    for (const auto &it : e.items()) {
        h -= xlog2x(to_double(it.prior));
    }
    return h;
}

struct OutcomeEntropy {
    int outcome = 0;
    Rational prob;
    std::vector<std::pair<int, Rational>> posterior;  // p(mu | a), labels with nonzero mass
    double state_entropy = 0.0;      // S(sum_mu p(mu|a) rho_mu^a)
    double component_entropy = 0.0;  // sum_mu p(mu|a) S(rho_mu^a)
    double holevo() const { return state_entropy - component_entropy; }
};

struct PauliEntropy {
    PauliOperator pauli{1};
    double mutual_information = 0.0;  // I(mu : a)
    std::vector<OutcomeEntropy> outcomes;
    double bound = 0.0;  // I(mu : a) + sum_a p(a) chi_a
};

/// Information about the label available after a first measurement of p:
/// the classical mutual information with the outcome plus the Holevo
/// quantity of each posterior ensemble.
inline PauliEntropy first_round_bound(const LabeledEnsemble &e, const PauliOperator &p) {
    if (!p.is_hermitian() || p.is_trivial()) {
        throw PreconditionError("first-round bound needs a Hermitian nontrivial Pauli");
    }
    const std::size_t n = e.num_qubits();
    PauliEntropy out;
    out.pauli = p;
    for (int a = 0; a < 2; ++a) {
        OutcomeEntropy oe;
        oe.outcome = a;
        oe.prob = Rational(0);
        // Per label: p(a | mu) and the post-measurement mixture of that label.
        std::vector<std::pair<int, Rational>> joint;
        std::vector<std::vector<std::pair<double, StateVector>>> label_terms;
        for (const auto &item : e.items()) {
            Rational p_a(0);
            std::vector<std::pair<Rational, StabilizerState>> comps;
            for (const auto &c : item.mixture) {
                Rational pc = outcome_probability(c.state, p, a);
                if (pc == Rational(0)) {
                    continue;
                }
                p_a += c.weight * pc;
                comps.emplace_back(c.weight * pc, pc == Rational(1) ? c.state : measure_pauli(c.state, p, a).post);
            }
            if (p_a == Rational(0)) {
                continue;
            }
            std::vector<std::pair<double, StateVector>> terms;
            for (auto &[w, s] : comps) {
                terms.emplace_back(to_double(w / p_a), to_statevector(s));
            }
            joint.emplace_back(item.label, item.prior * p_a);
            label_terms.push_back(std::move(terms));
            oe.prob += item.prior * p_a;
        }
        if (oe.prob == Rational(0)) {
            continue;
        }
        DensityMatrix rho(n);
        for (std::size_t i = 0; i < joint.size(); ++i) {
            const Rational post = joint[i].second / oe.prob;
            oe.posterior.emplace_back(joint[i].first, post);
            const double w = to_double(post);
            for (const auto &[tw, v] : label_terms[i]) {
                rho.add_pure(w * tw, v);
            }
            if (label_terms[i].size() > 1) {
                oe.component_entropy += w * von_neumann_entropy(DensityMatrix::mixture(label_terms[i]));
            }
        }
        oe.state_entropy = von_neumann_entropy(rho);
        out.outcomes.push_back(std::move(oe));
    }
    // I(mu : a) = H(a) - H(a | mu).
    double h_a = 0.0;
    for (const auto &oe : out.outcomes) {
        h_a -= xlog2x(to_double(oe.prob));
    }
    double h_a_given_mu = 0.0;
    for (const auto &item : e.items()) {
        Rational p0(0);
        for (const auto &c : item.mixture) {
            p0 += c.weight * outcome_probability(c.state, p, 0);
        }
        h_a_given_mu += to_double(item.prior) * binary_entropy(to_double(p0));
    }
    out.mutual_information = h_a - h_a_given_mu;
    out.bound = out.mutual_information;
    for (const auto &oe : out.outcomes) {
        out.bound += to_double(oe.prob) * oe.holevo();
    }
    return out;
}

struct EntropyGap {
    double prior_entropy = 0.0;
    double max_bound = 0.0;
    double gap = 0.0;
    std::vector<PauliOperator> maximizers;  // every P within the tolerance of the max
    std::vector<PauliEntropy> per_pauli;
    bool identity_excluded = true;
};

/// gap = H(prior) - max over nontrivial P of first_round_bound(P). The
/// identity is left out: it reveals nothing and disturbs nothing.
inline EntropyGap entropy_gap(const LabeledEnsemble &e, double tie_tolerance = 1e-9) {
    EntropyGap out;
    out.prior_entropy = prior_entropy(e);
    out.max_bound = -1.0;
    for (const auto &p : enumerate_hermitian_paulis(e.num_qubits(), false)) {
        out.per_pauli.push_back(first_round_bound(e, p));
        out.max_bound = std::max(out.max_bound, out.per_pauli.back().bound);
    }
    for (const auto &pe : out.per_pauli) {
        if (pe.bound >= out.max_bound - tie_tolerance) {
            out.maximizers.push_back(pe.pauli);
        }
    }
    out.gap = out.prior_entropy - out.max_bound;
    return out;
}

struct FanoBound {
    double value = 1.0;
    bool valid = true;  // false when the gap exceeds log2 m and constrains nothing
};

/// Largest success probability p consistent with
/// gap <= H_b(p) + (1 - p) log2(m - 1).
inline FanoBound fano_success_bound(double gap, int m, double tolerance = 1e-12) {
    if (m < 2) {
        throw DomainError("Fano bound needs at least two hypotheses");
    }
    if (!(gap >= 0.0)) {
        throw DomainError("entropy gap must be non-negative");
    }
    const double log_m1 = std::log2(static_cast<double>(m - 1));
    auto f = [&](double p) { return binary_entropy(p) + (1.0 - p) * log_m1; };
    if (gap == 0.0) {
        return {1.0, true};
    }
    if (gap > std::log2(static_cast<double>(m))) {
        return {1.0 / m, false};
    }
    // f decreases from log2 m at (m-1)/m to 0 at 1.
    double lo = static_cast<double>(m - 1) / m;
    double hi = 1.0;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= gap) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, true};
}

/// R = (p_all - 1/2) / (p_stab - 1/2).
inline double data_hiding_ratio(double p_all, double p_stab) {
    if (!(p_stab > 0.5)) {
        throw DomainError("stabilizer success probability must exceed 1/2");
    }
    if (!(p_stab <= p_all && p_all <= 1.0)) {
        throw DomainError("need p_stab <= p_all <= 1");
    }
    return (p_all - 0.5) / (p_stab - 0.5);
}

}  // namespace stabdisc
