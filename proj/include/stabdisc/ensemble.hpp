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
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stabdisc/errors.hpp"
#include "stabdisc/rational.hpp"
#include "stabdisc/stabilizer_state.hpp"

namespace stabdisc {

struct MixtureComponent {
    Rational weight;
    StabilizerState state;
};

/// One hypothesis: a label, its prior and the (possibly mixed) state it stands for.
struct EnsembleItem {
    int label = 0;
    Rational prior;
    std::vector<MixtureComponent> mixture;
};

/// A weighted pure state tagged with the label it belongs to. Flattened
/// ensembles and measurement posteriors are lists of these.
struct WeightedState {
    int label = 0;
    Rational weight;
    StabilizerState state;
};

using Posterior = std::vector<WeightedState>;

class LabeledEnsemble {
   public:
    LabeledEnsemble() = default;

    explicit LabeledEnsemble(std::vector<EnsembleItem> items) : items_(std::move(items)) { validate(); }

    /// Pure states with uniform priors, labelled first_label, first_label + 1, ...
    static LabeledEnsemble uniform_pure(const std::vector<StabilizerState> &states, int first_label = 1) {
        std::vector<EnsembleItem> items;
        const Rational prior(1, static_cast<std::int64_t>(states.size()));
        for (std::size_t i = 0; i < states.size(); ++i) {
            items.push_back({first_label + static_cast<int>(i), prior, {{Rational(1), states[i]}}});
        }
        return LabeledEnsemble(std::move(items));
    }

    const std::vector<EnsembleItem> &items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    std::size_t num_qubits() const { return items_.empty() ? 0 : items_.front().mixture.front().state.num_qubits(); }

    bool is_pure() const {
        return std::all_of(items_.begin(), items_.end(), [](const auto &it) { return it.mixture.size() == 1; });
    }

    std::vector<int> labels() const {
        std::vector<int> out;
        for (const auto &it : items_) {
            out.push_back(it.label);
        }
        return out;
    }

    const EnsembleItem &item(int label) const {
        for (const auto &it : items_) {
            if (it.label == label) {
                return it;
            }
        }
        throw IndexError("no item with label " + std::to_string(label));
    }

    /// Drops the given labels and renormalizes the remaining priors.
    LabeledEnsemble without(const std::vector<int> &dropped) const {
        std::vector<EnsembleItem> kept;
        Rational total(0);
        for (const auto &it : items_) {
            if (std::find(dropped.begin(), dropped.end(), it.label) == dropped.end()) {
                kept.push_back(it);
                total += it.prior;
            }
        }
        if (kept.empty()) {
            throw PreconditionError("removing every item leaves an empty ensemble");
        }
        for (auto &it : kept) {
            it.prior /= total;
        }
        return LabeledEnsemble(std::move(kept));
    }

    /// Every pure component with weight prior * mixture weight.
    Posterior flatten() const {
        Posterior out;
        for (const auto &it : items_) {
            for (const auto &c : it.mixture) {
                out.push_back({it.label, it.prior * c.weight, c.state});
            }
        }
        return out;
    }

    void validate() const {
        if (items_.empty()) {
            throw PreconditionError("ensemble has no items");
        }
        std::set<int> seen;
        Rational prior_sum(0);
        const std::size_t n = items_.front().mixture.empty() ? 0 : items_.front().mixture.front().state.num_qubits();
        for (const auto &it : items_) {
            if (!seen.insert(it.label).second) {
                throw PreconditionError("duplicate label " + std::to_string(it.label));
            }
            if (it.prior <= Rational(0)) {
                throw DomainError("prior of label " + std::to_string(it.label) + " is not positive");
            }
            if (it.mixture.empty()) {
                throw PreconditionError("label " + std::to_string(it.label) + " has an empty mixture");
            }
            Rational weight_sum(0);
            for (const auto &c : it.mixture) {
                if (c.weight <= Rational(0)) {
                    throw DomainError("mixture weight is not positive");
                }
                if (c.state.num_qubits() != n) {
                    throw DimensionError("ensemble states have different qubit counts");
                }
                weight_sum += c.weight;
            }
            if (weight_sum != Rational(1)) {
                throw DomainError("mixture weights of label " + std::to_string(it.label) + " sum to " +
                                  to_string(weight_sum));
            }
            prior_sum += it.prior;
        }
        if (prior_sum != Rational(1)) {
            throw DomainError("priors sum to " + to_string(prior_sum));
        }
    }

   private:
    std::vector<EnsembleItem> items_;
};

/// Merges components with equal label and state, drops zero weights, and
/// sorts by (label, canonical form). Two posteriors describe the same
/// physical situation iff their normalized forms are equal.
inline Posterior normalize_posterior(Posterior post) {
    std::vector<std::pair<std::string, WeightedState>> keyed;
    for (auto &w : post) {
        if (w.weight != Rational(0)) {
            keyed.emplace_back(w.state.canonical_key(), std::move(w));
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
        return a.second.label != b.second.label ? a.second.label < b.second.label : a.first < b.first;
    });
    Posterior out;
    const std::string *last_key = nullptr;
    for (auto &[key, w] : keyed) {
        if (!out.empty() && out.back().label == w.label && *last_key == key) {
            out.back().weight += w.weight;
        } else {
            out.push_back(std::move(w));
        }
        last_key = &key;
    }
    Rational total(0);
    for (const auto &w : out) {
        total += w.weight;
    }
    if (total != Rational(0) && total != Rational(1)) {
        for (auto &w : out) {
            w.weight /= total;
        }
    }
    return out;
}

/// Memo key of a normalized posterior.
inline std::string posterior_key(const Posterior &post) {
    std::string key;
    for (const auto &w : post) {
        key += std::to_string(w.label);
        key += ':';
        key += to_string(w.weight);
        key += ':';
        key += w.state.canonical_key();
        key += '|';
    }
    return key;
}

}  // namespace stabdisc
