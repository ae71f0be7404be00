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
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "stabdisc/discrimination.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/state_sets.hpp"
#include "stabdisc/statevector.hpp"

namespace stabdisc {

/// Name recorded in reports for the per-trial generator.
inline constexpr std::string_view kGeneratorName = "mt19937_64 seeded with splitmix64(seed, trial)";

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) {
        x = rng();
    }
    return x % bound;
}

struct TrialRecord {
    std::size_t trial = 0;
    int label = 0;
    int guess = 0;
    bool correct = false;
};

enum class ProverKind { FullQuantum, Stabilizer, Custom };

/// A prover answers one trial given the true state's label (used only to
/// prepare the state) and the trial's generator.
struct Prover {
    ProverKind kind = ProverKind::FullQuantum;
    std::string name;
    Strategy strategy;
    std::function<int(int, std::mt19937_64 &)> custom;

    static Prover full_quantum() { return {ProverKind::FullQuantum, "full-quantum", nullptr, {}}; }
    static Prover stabilizer(Strategy s, std::string name = "stabilizer") {
        return {ProverKind::Stabilizer, std::move(name), std::move(s), {}};
    }
    static Prover make_custom(std::string name, std::function<int(int, std::mt19937_64 &)> fn) {
        return {ProverKind::Custom, std::move(name), nullptr, std::move(fn)};
    }
};

namespace detail {

/// Computational-basis output of the three-gate circuit -> label.
inline const std::map<std::size_t, int> &readout_decoder() {
    static const auto table = [] {
        std::map<std::size_t, int> t;
        const auto gates = readout_circuit();
        const auto kets = six_state_kets();
        for (std::size_t i = 0; i < kets.size(); ++i) {
            auto v = apply_gates(StateVector::from_kets(kets[i]), gates);
            t[*v.as_basis_state(1e-9)] = static_cast<int>(i) + 1;
        }
        return t;
    }();
    return table;
}

inline int run_full_quantum(int label, std::mt19937_64 &rng) {
    const auto v = apply_gates(StateVector::from_kets(six_state_kets()[static_cast<std::size_t>(label - 1)]), readout_circuit());
    // Sample the computational-basis readout.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    std::size_t outcome = v.dim() - 1;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        acc += std::norm(v[k]);
        if (u < acc) {
            outcome = k;
            break;
        }
    }
    auto it = readout_decoder().find(outcome);
    return it == readout_decoder().end() ? 0 : it->second;
}

inline int run_strategy(const StrategyNode &root, StabilizerState state, std::mt19937_64 &rng) {
    const StrategyNode *node = &root;
    while (!node->is_leaf()) {
        auto m = measure_pauli(state, *node->pauli, rng);
        state = std::move(m.post);
        node = node->children[static_cast<std::size_t>(m.outcome)].get();
    }
    return node->guess;
}

}  // namespace detail

/// N trials with labels drawn uniformly from the six-state set. Trial t uses
/// its own generator derived from (seed, t), so the records do not depend on
/// the thread count.
inline std::vector<TrialRecord> simulate(const Prover &prover, std::size_t trials, std::uint64_t seed,
                                         unsigned threads = 1) {
    if (trials < 1) {
        throw PreconditionError("need at least one trial");
    }
    if (prover.kind == ProverKind::Stabilizer && !prover.strategy) {
        throw PreconditionError("stabilizer prover without a strategy");
    }
    if (prover.kind == ProverKind::Custom && !prover.custom) {
        throw PreconditionError("custom prover without a function");
    }
    const auto six = six_state_set();
    std::vector<TrialRecord> out(trials);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            auto rng = trial_rng(seed, t);
            const int label = static_cast<int>(uniform_below(rng, 6)) + 1;
            int guess = 0;
            switch (prover.kind) {
                case ProverKind::FullQuantum:
                    guess = detail::run_full_quantum(label, rng);
                    break;
                case ProverKind::Stabilizer:
                    guess = detail::run_strategy(*prover.strategy, six.item(label).mixture.front().state, rng);
                    break;
                case ProverKind::Custom:
                    guess = prover.custom(label, rng);
                    break;
            }
            out[t] = {t, label, guess, guess == label};
        }
    };
    const unsigned k = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (k == 1) {
        run(0, trials);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < k; ++i) {
            pool.emplace_back(run, trials * i / k, trials * (i + 1) / k);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    return out;
}

inline std::size_t count_successes(const std::vector<TrialRecord> &records) {
    std::size_t s = 0;
    for (const auto &r : records) {
        s += r.correct ? 1 : 0;
    }
    return s;
}

struct BinomialCertificate {
    std::size_t trials = 0;
    std::size_t successes = 0;
    double p0 = 0.0;
    double p_value = 1.0;
    double confidence = 0.0;    // 1 - p_value
    double sigma_equiv = 0.0;   // standard-normal quantile of 1 - p_value
};

/// P(X >= k) for X ~ Binomial(N, p0), summed in log space.
inline double binomial_upper_tail(std::size_t trials, std::size_t k, double p0) {
    if (k == 0) {
        return 1.0;
    }
    if (k > trials) {
        return 0.0;
    }
    const double n = static_cast<double>(trials);
    const double lp = std::log(p0);
    const double lq = std::log1p(-p0);
    std::vector<double> terms;
    for (std::size_t j = k; j <= trials; ++j) {
        const double jj = static_cast<double>(j);
        terms.push_back(std::lgamma(n + 1) - std::lgamma(jj + 1) - std::lgamma(n - jj + 1) + jj * lp + (n - jj) * lq);
    }
    const double top = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) {
        s += std::exp(t - top);
    }
    return std::min(1.0, std::exp(top) * s);
}

/// Same tail through the regularized incomplete beta function I_p0(k, N - k + 1).
inline double binomial_upper_tail_reference(std::size_t trials, std::size_t k, double p0) {
    if (k == 0) {
        return 1.0;
    }
    if (k > trials) {
        return 0.0;
    }
    return boost::math::ibeta(static_cast<double>(k), static_cast<double>(trials - k + 1), p0);
}

/// One-sided binomial test of "success rate > p0".
inline BinomialCertificate binomial_certificate(std::size_t trials, std::size_t successes, double p0) {
    if (successes > trials) {
        throw PreconditionError("successes exceed trials");
    }
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw DomainError("p0 must lie in (0, 1)");
    }
    BinomialCertificate c;
    c.trials = trials;
    c.successes = successes;
    c.p0 = p0;
    c.p_value = binomial_upper_tail(trials, successes, p0);
    c.confidence = 1.0 - c.p_value;
    if (c.p_value >= 1.0) {
        c.sigma_equiv = -std::numeric_limits<double>::infinity();
    } else if (c.p_value <= 0.0) {
        c.sigma_equiv = std::numeric_limits<double>::infinity();
    } else {
        const boost::math::normal standard;
        c.sigma_equiv = boost::math::quantile(boost::math::complement(standard, c.p_value));
    }
    return c;
}

}  // namespace stabdisc
