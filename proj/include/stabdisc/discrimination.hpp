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
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stabdisc/clifford.hpp"
#include "stabdisc/ensemble.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/pauli.hpp"
#include "stabdisc/rational.hpp"
#include "stabdisc/stabilizer_state.hpp"
#include "stabdisc/state_sets.hpp"

namespace stabdisc {

// ---------------------------------------------------------------------------
// Strategy trees

struct StrategyNode;
using Strategy = std::shared_ptr<const StrategyNode>;

/// Either a leaf that guesses a label, or a Pauli measurement with one
/// subtree per outcome.
struct StrategyNode {
    std::optional<PauliOperator> pauli;
    int guess = 0;
    std::array<Strategy, 2> children;

    static Strategy leaf(int label) {
        auto node = std::make_shared<StrategyNode>();
        node->guess = label;
        return node;
    }

    static Strategy measure(PauliOperator p, Strategy on_zero, Strategy on_one) {
        if (!p.is_hermitian() || p.is_trivial()) {
            throw PreconditionError("strategy measurements must be Hermitian and nontrivial");
        }
        auto node = std::make_shared<StrategyNode>();
        node->pauli = std::move(p);
        node->children = {std::move(on_zero), std::move(on_one)};
        return node;
    }

    bool is_leaf() const { return !pauli.has_value(); }

    int depth() const { return is_leaf() ? 0 : 1 + std::max(children[0]->depth(), children[1]->depth()); }

    std::size_t size() const { return is_leaf() ? 1 : 1 + children[0]->size() + children[1]->size(); }

    /// Indented text form, one node per line.
    std::string str(int indent = 0) const {
        const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        if (is_leaf()) {
            return pad + "guess " + std::to_string(guess) + "\n";
        }
        std::string out = pad + "measure " + pauli->str() + "\n";
        for (int a = 0; a < 2; ++a) {
            out += pad + "  a=" + std::to_string(a) + ":\n" + children[static_cast<std::size_t>(a)]->str(indent + 2);
        }
        return out;
    }

    friend bool operator==(const StrategyNode &a, const StrategyNode &b) {
        if (a.is_leaf() != b.is_leaf()) {
            return false;
        }
        if (a.is_leaf()) {
            return a.guess == b.guess;
        }
        return *a.pauli == *b.pauli && *a.children[0] == *b.children[0] && *a.children[1] == *b.children[1];
    }
};

// ---------------------------------------------------------------------------
// Measurement updates on weighted ensembles

struct Branch {
    Rational prob;
    Posterior posterior;  // normalized, empty when prob == 0
};

/// Outcome probabilities and normalized posteriors of measuring p.
inline std::array<Branch, 2> split(const Posterior &post, const PauliOperator &p) {
    std::array<Posterior, 2> raw;
    std::array<Rational, 2> mass{Rational(0), Rational(0)};
    for (const auto &w : post) {
        const int e = expectation(w.state, p);
        if (e != 0) {
            const auto a = static_cast<std::size_t>(e == 1 ? 0 : 1);
            raw[a].push_back(w);
            mass[a] += w.weight;
            continue;
        }
        for (int a = 0; a < 2; ++a) {
            const Rational half = w.weight / 2;
            raw[static_cast<std::size_t>(a)].push_back({w.label, half, measure_pauli(w.state, p, a).post});
            mass[static_cast<std::size_t>(a)] += half;
        }
    }
    Rational total = mass[0] + mass[1];
    std::array<Branch, 2> out;
    for (std::size_t a = 0; a < 2; ++a) {
        out[a].prob = total == Rational(0) ? Rational(0) : mass[a] / total;
        if (mass[a] != Rational(0)) {
            out[a].posterior = normalize_posterior(std::move(raw[a]));
        }
    }
    return out;
}

inline std::vector<int> posterior_labels(const Posterior &post) {
    std::vector<int> out;
    for (const auto &w : post) {
        if (out.empty() || out.back() != w.label) {
            out.push_back(w.label);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Label with the largest total weight, lowest label on ties.
inline std::pair<int, Rational> best_guess(const Posterior &post) {
    std::map<int, Rational> mass;
    for (const auto &w : post) {
        mass[w.label] += w.weight;
    }
    std::pair<int, Rational> best{0, Rational(-1)};
    for (const auto &[label, m] : mass) {
        if (m > best.second) {
            best = {label, m};
        }
    }
    return best;
}

struct OverlapPair {
    int label_a = 0;
    int label_b = 0;
    Rational overlap;
};

/// First pair of components with distinct labels and nonzero overlap.
inline std::optional<OverlapPair> find_nonorthogonal_pair(const Posterior &post) {
    for (std::size_t i = 0; i < post.size(); ++i) {
        for (std::size_t j = i + 1; j < post.size(); ++j) {
            if (post[i].label == post[j].label) {
                continue;
            }
            Rational ov = overlap_squared(post[i].state, post[j].state);
            if (ov != Rational(0)) {
                return OverlapPair{post[i].label, post[j].label, ov};
            }
        }
    }
    return std::nullopt;
}

/// Exact success probability of a strategy on an ensemble.
inline Rational evaluate_strategy(const Posterior &post, const StrategyNode &node) {
    if (node.is_leaf()) {
        Rational hit(0);
        for (const auto &w : post) {
            if (w.label == node.guess) {
                hit += w.weight;
            }
        }
        return hit;
    }
    auto branches = split(post, *node.pauli);
    Rational total(0);
    for (std::size_t a = 0; a < 2; ++a) {
        if (branches[a].prob != Rational(0)) {
            total += branches[a].prob * evaluate_strategy(branches[a].posterior, *node.children[a]);
        }
    }
    return total;
}

inline Rational evaluate_strategy(const LabeledEnsemble &e, const StrategyNode &node) {
    return evaluate_strategy(normalize_posterior(e.flatten()), node);
}

// ---------------------------------------------------------------------------
// First-round analysis

struct OverlapWitness {
    int label = 0;        // component whose label is balanced
    std::size_t component = 0;
    int other_label = 0;
    std::size_t other_component = 0;
    int outcome = 0;
    Rational overlap;     // |<post|post'>|^2
};

struct PauliRoundReport {
    PauliOperator pauli{1};
    std::vector<std::pair<int, Rational>> prob_of_zero;  // per label, mixture-averaged
    std::vector<int> balanced;                           // labels with 0 < p(0) < 1
    std::vector<OverlapWitness> witnesses;
    bool condition_holds = false;
};

struct FirstRoundReport {
    std::vector<PauliRoundReport> per_pauli;  // enumeration order

    bool holds_for_all() const {
        return std::all_of(per_pauli.begin(), per_pauli.end(), [](const auto &r) { return r.condition_holds; });
    }
    std::size_t count_holding() const {
        return static_cast<std::size_t>(
            std::count_if(per_pauli.begin(), per_pauli.end(), [](const auto &r) { return r.condition_holds; }));
    }
};

struct FirstRoundOptions {
    std::size_t max_witnesses = 0;  // per Pauli; 0 keeps all
};

/// The report for one observable.
inline PauliRoundReport analyze_first_round(const LabeledEnsemble &e, const PauliOperator &p,
                                            const FirstRoundOptions &opt = {}) {
    PauliRoundReport rep;
    rep.pauli = p;
    struct Comp {
        int label;
        std::size_t index;
        Rational p0;
        std::array<std::optional<StabilizerState>, 2> post;
    };
    std::vector<Comp> comps;
    for (const auto &item : e.items()) {
        Rational avg(0);
        for (std::size_t c = 0; c < item.mixture.size(); ++c) {
            const auto &state = item.mixture[c].state;
            const int ex = expectation(state, p);
            Comp comp{item.label, c, Rational(1 + ex, 2), {}};
            for (int a = 0; a < 2; ++a) {
                const Rational pa = a == 0 ? comp.p0 : 1 - comp.p0;
                if (pa == Rational(1)) {
                    comp.post[static_cast<std::size_t>(a)] = state;
                } else if (pa != Rational(0)) {
                    comp.post[static_cast<std::size_t>(a)] = measure_pauli(state, p, a).post;
                }
            }
            avg += item.mixture[c].weight * comp.p0;
            comps.push_back(std::move(comp));
        }
        rep.prob_of_zero.emplace_back(item.label, avg);
        if (avg != Rational(0) && avg != Rational(1)) {
            rep.balanced.push_back(item.label);
        }
    }
    auto is_balanced = [&](int label) {
        return std::find(rep.balanced.begin(), rep.balanced.end(), label) != rep.balanced.end();
    };
    for (int a = 0; a < 2 && !(opt.max_witnesses != 0 && rep.witnesses.size() >= opt.max_witnesses); ++a) {
        const auto ai = static_cast<std::size_t>(a);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (!comps[i].post[ai] || !is_balanced(comps[i].label)) {
                continue;
            }
            for (std::size_t j = 0; j < comps.size(); ++j) {
                if (comps[j].label == comps[i].label || !comps[j].post[ai]) {
                    continue;
                }
                // Each unordered pair once when both labels are balanced.
                if (is_balanced(comps[j].label) && j < i) {
                    continue;
                }
                Rational ov = overlap_squared(*comps[i].post[ai], *comps[j].post[ai]);
                if (ov == Rational(0)) {
                    continue;
                }
                rep.witnesses.push_back(
                    {comps[i].label, comps[i].index, comps[j].label, comps[j].index, a, ov});
                if (opt.max_witnesses != 0 && rep.witnesses.size() >= opt.max_witnesses) {
                    break;
                }
            }
            if (opt.max_witnesses != 0 && rep.witnesses.size() >= opt.max_witnesses) {
                break;
            }
        }
    }
    rep.condition_holds = !rep.witnesses.empty();
    return rep;
}

/// Report over every nontrivial Hermitian Pauli, in enumeration order.
inline FirstRoundReport first_round_report(const LabeledEnsemble &e, const FirstRoundOptions &opt = {}) {
    FirstRoundReport out;
    for (const auto &p : enumerate_hermitian_paulis(e.num_qubits(), false)) {
        out.per_pauli.push_back(analyze_first_round(e, p, opt));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Perfect discrimination decision procedure

enum class Verdict { Yes, No, Unknown };

inline std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes:
            return "yes";
        case Verdict::No:
            return "no";
        case Verdict::Unknown:
            break;
    }
    return "unknown";
}

/// Why a first-round measurement fails: the branch that cannot be finished,
/// with the overlapping pair when that branch is non-orthogonal outright.
struct Refutation {
    PauliOperator pauli{1};
    int outcome = 0;
    std::optional<OverlapPair> pair;
};

struct SearchOptions {
    int max_depth = 8;
    unsigned threads = 1;
};

struct DiscriminationResult {
    Verdict verdict = Verdict::Unknown;
    Strategy strategy;                      // Yes
    std::optional<OverlapPair> base_pair;   // No because the ensemble itself is non-orthogonal
    std::vector<Refutation> refutations;    // No: one per first-round Pauli
    int depth_searched = 0;
    std::size_t nodes = 0;
};

namespace detail {

using KeyList = std::shared_ptr<const std::vector<std::string>>;

struct NodeResult {
    Verdict verdict = Verdict::Unknown;
    Strategy strategy;
    KeyList keys;  // posterior keys below this node in the strategy (Yes)
    std::optional<OverlapPair> pair;
    bool absolute = true;  // computed without path pruning
};

struct PauliAttempt {
    Verdict verdict = Verdict::No;
    Strategy strategy;
    KeyList keys;
    Refutation refutation;
    bool absolute = true;
};

/// Depth-bounded search over Pauli measurement trees. Memo values are pure
/// functions of (posterior, remaining depth): Yes entries are reused only when
/// their strategy avoids the current path, and No entries only when they were
/// derived without path pruning, so reuse agrees with recomputation and the
/// answer does not depend on thread interleaving.
class DiscriminationSearch {
   public:
    explicit DiscriminationSearch(std::size_t n) : n_(n) {
        for (const auto &p : enumerate_hermitian_paulis(n, false)) {
            paulis_.push_back(p);
        }
    }

    const std::vector<PauliOperator> &paulis() const { return paulis_; }
    std::size_t nodes() const { return nodes_.load(); }

    NodeResult solve(const Posterior &post, const std::string &key, int rem, std::vector<std::string> &path) {
        nodes_.fetch_add(1, std::memory_order_relaxed);
        if (auto base = base_case(post)) {
            return *base;
        }
        if (lookup_no(key)) {
            return {Verdict::No, nullptr, nullptr, std::nullopt, true};
        }
        if (auto hit = lookup_yes(key, rem, path)) {
            return *hit;
        }
        if (rem <= 0) {
            return {Verdict::Unknown, nullptr, nullptr, std::nullopt, true};
        }
        path.push_back(key);
        NodeResult result{Verdict::No, nullptr, nullptr, std::nullopt, true};
        bool unknown = false;
        for (const auto &p : paulis_) {
            auto attempt = try_pauli(post, key, p, rem, path);
            result.absolute = result.absolute && attempt.absolute;
            if (attempt.verdict == Verdict::Yes) {
                result.verdict = Verdict::Yes;
                result.strategy = attempt.strategy;
                result.keys = attempt.keys;
                break;
            }
            unknown = unknown || attempt.verdict == Verdict::Unknown;
        }
        path.pop_back();
        if (result.verdict != Verdict::Yes && unknown) {
            result.verdict = Verdict::Unknown;
        }
        store(key, rem, result);
        return result;
    }

    std::optional<NodeResult> base_case(const Posterior &post) const {
        auto labels = posterior_labels(post);
        if (labels.size() == 1) {
            return NodeResult{Verdict::Yes, StrategyNode::leaf(labels.front()),
                              std::make_shared<const std::vector<std::string>>(), std::nullopt, true};
        }
        if (auto pair = find_nonorthogonal_pair(post)) {
            return NodeResult{Verdict::No, nullptr, nullptr, pair, true};
        }
        return std::nullopt;
    }

    PauliAttempt try_pauli(const Posterior &post, const std::string &key, const PauliOperator &p, int rem,
                           std::vector<std::string> &path) {
        PauliAttempt out;
        out.refutation.pauli = p;
        auto branches = split(post, p);
        std::array<Strategy, 2> children;
        auto keys = std::make_shared<std::vector<std::string>>();
        const int fallback = post.front().label;
        for (std::size_t a = 0; a < 2; ++a) {
            if (branches[a].prob == Rational(0)) {
                children[a] = StrategyNode::leaf(fallback);
                continue;
            }
            const std::string child_key = posterior_key(branches[a].posterior);
            out.refutation.outcome = static_cast<int>(a);
            if (child_key == key) {
                // Measuring p does nothing here.
                out.verdict = Verdict::No;
                return out;
            }
            if (std::find(path.begin(), path.end(), child_key) != path.end()) {
                out.verdict = Verdict::No;
                out.absolute = false;
                return out;
            }
            auto child = solve(branches[a].posterior, child_key, rem - 1, path);
            out.absolute = out.absolute && child.absolute;
            if (child.verdict != Verdict::Yes) {
                out.verdict = child.verdict;
                out.refutation.pair = child.pair;
                return out;
            }
            children[a] = child.strategy;
            keys->push_back(child_key);
            keys->insert(keys->end(), child.keys->begin(), child.keys->end());
        }
        out.verdict = Verdict::Yes;
        out.strategy = StrategyNode::measure(p, children[0], children[1]);
        out.keys = std::move(keys);
        return out;
    }

   private:
    struct YesEntry {
        Strategy strategy;
        KeyList keys;
    };

    static std::string memo_key(const std::string &key, int rem) { return std::to_string(rem) + '#' + key; }

    bool lookup_no(const std::string &key) const {
        std::shared_lock lock(mutex_);
        return no_.contains(key);
    }

    std::optional<NodeResult> lookup_yes(const std::string &key, int rem, const std::vector<std::string> &path) const {
        std::shared_lock lock(mutex_);
        auto it = yes_.find(memo_key(key, rem));
        if (it == yes_.end()) {
            return std::nullopt;
        }
        for (const auto &k : *it->second.keys) {
            if (std::find(path.begin(), path.end(), k) != path.end()) {
                return std::nullopt;
            }
        }
        return NodeResult{Verdict::Yes, it->second.strategy, it->second.keys, std::nullopt, true};
    }

    void store(const std::string &key, int rem, const NodeResult &r) {
        if (r.verdict == Verdict::Yes) {
            // A Yes is valid whatever the path; reuse is guarded by its key list.
            std::unique_lock lock(mutex_);
            yes_.try_emplace(memo_key(key, rem), YesEntry{r.strategy, r.keys});
        } else if (r.verdict == Verdict::No && r.absolute) {
            std::unique_lock lock(mutex_);
            no_.insert(key);
        }
    }

    std::size_t n_;
    std::vector<PauliOperator> paulis_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, YesEntry> yes_;
    std::unordered_set<std::string> no_;
    std::atomic<std::size_t> nodes_{0};
};

}  // namespace detail

/// Decides whether Pauli measurements with classical feed-forward can
/// identify the label with certainty. Depths 1..max_depth are tried in turn,
/// so a Yes strategy has the smallest depth that works; among strategies of
/// that depth the lowest-index Pauli wins at every node.
inline DiscriminationResult is_perfectly_discriminable(const LabeledEnsemble &e, const SearchOptions &opt = {}) {
    if (opt.max_depth < 1) {
        throw PreconditionError("max_depth must be at least 1");
    }
    DiscriminationResult out;
    const Posterior root = normalize_posterior(e.flatten());
    detail::DiscriminationSearch search(e.num_qubits());
    if (auto base = search.base_case(root)) {
        out.verdict = base->verdict;
        out.strategy = base->strategy;
        out.base_pair = base->pair;
        return out;
    }
    const std::string root_key = posterior_key(root);
    const auto &paulis = search.paulis();
    for (int depth = 1; depth <= opt.max_depth; ++depth) {
        out.depth_searched = depth;
        std::vector<detail::PauliAttempt> attempts(paulis.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{paulis.size()};
        auto worker = [&] {
            std::vector<std::string> path{root_key};
            for (std::size_t i = next.fetch_add(1); i < paulis.size(); i = next.fetch_add(1)) {
                if (i > best.load()) {
                    break;
                }
                attempts[i] = search.try_pauli(root, root_key, paulis[i], depth, path);
                if (attempts[i].verdict == Verdict::Yes) {
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };
        const unsigned threads = std::max(1U, opt.threads);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back(worker);
            }
            for (auto &t : pool) {
                t.join();
            }
        }
        if (best.load() < paulis.size()) {
            out.verdict = Verdict::Yes;
            out.strategy = attempts[best.load()].strategy;
            break;
        }
        const bool unknown = std::any_of(attempts.begin(), attempts.end(),
                                         [](const auto &a) { return a.verdict == Verdict::Unknown; });
        if (!unknown) {
            out.verdict = Verdict::No;
            for (auto &a : attempts) {
                out.refutations.push_back(a.refutation);
            }
            break;
        }
        out.verdict = Verdict::Unknown;
    }
    out.nodes = search.nodes();
    return out;
}

// ---------------------------------------------------------------------------
// Achievable success probability

struct SuccessBound {
    Rational value;
    Strategy strategy;
};

namespace detail {

class SuccessSearch {
   public:
    explicit SuccessSearch(std::size_t n) {
        for (const auto &p : enumerate_hermitian_paulis(n, false)) {
            paulis_.push_back(p);
        }
    }

    SuccessBound solve(const Posterior &post, const std::string &key, int depth) {
        const std::string mk = std::to_string(depth) + '#' + key;
        if (auto it = memo_.find(mk); it != memo_.end()) {
            return it->second;
        }
        auto [label, mass] = best_guess(post);
        SuccessBound best{mass, StrategyNode::leaf(label)};
        if (depth > 0 && mass != Rational(1)) {
            for (const auto &p : paulis_) {
                auto branches = split(post, p);
                std::array<Strategy, 2> children;
                Rational value(0);
                bool noop = false;
                for (std::size_t a = 0; a < 2; ++a) {
                    if (branches[a].prob == Rational(0)) {
                        children[a] = StrategyNode::leaf(label);
                        continue;
                    }
                    const std::string child_key = posterior_key(branches[a].posterior);
                    if (child_key == key) {
                        noop = true;
                        break;
                    }
                    auto child = solve(branches[a].posterior, child_key, depth - 1);
                    value += branches[a].prob * child.value;
                    children[a] = child.strategy;
                }
                if (noop || value <= best.value) {
                    continue;
                }
                best = {value, StrategyNode::measure(p, children[0], children[1])};
                if (value == Rational(1)) {
                    break;
                }
            }
        }
        memo_.emplace(mk, best);
        return best;
    }

   private:
    std::vector<PauliOperator> paulis_;
    std::unordered_map<std::string, SuccessBound> memo_;
};

}  // namespace detail

/// Best success probability over Pauli measurement trees of the given depth,
/// with the tree that attains it.
inline SuccessBound success_probability_lower_bound(const LabeledEnsemble &e, int depth) {
    if (depth < 0) {
        throw PreconditionError("depth must be non-negative");
    }
    const Posterior root = normalize_posterior(e.flatten());
    detail::SuccessSearch search(e.num_qubits());
    return search.solve(root, posterior_key(root), depth);
}

// ---------------------------------------------------------------------------
// Ancilla recovery

/// Clifford circuit that undoes the measurement of p on system (x) |0...0>
/// when p anticommutes with Z on ancilla qubit c = n_system + k. It applies
/// the controlled map |0><0| (x) 1 + |1><1| (x) p X_c, then H_c, then X_c if
/// the ancilla ended in |->.
inline CliffordCircuit ancilla_recovery(const PauliOperator &p, std::size_t n_system, std::size_t k, int a) {
    const std::size_t total = p.num_qubits();
    const std::size_t c = n_system + k;
    if (c >= total) {
        throw IndexError("ancilla index out of range");
    }
    if (!p.is_hermitian()) {
        throw NonHermitian("recovery needs a Hermitian Pauli");
    }
    if (a != 0 && a != 1) {
        throw PreconditionError("outcome must be 0 or 1");
    }
    const char lc = p.letter(c);
    if (lc != 'X' && lc != 'Y') {
        throw PreconditionError("Pauli commutes with Z on the ancilla");
    }
    CliffordCircuit circuit(total);
    for (std::size_t q = 0; q < total; ++q) {
        if (q == c) {
            continue;
        }
        switch (p.letter(q)) {
            case 'X':
                circuit.append(Gate::cnot(c, q));
                break;
            case 'Z':
                circuit.append(Gate::cz(c, q));
                break;
            case 'Y':
                circuit.append(Gate::s(q)).append(Gate::z(q)).append(Gate::cnot(c, q)).append(Gate::s(q));
                break;
            default:
                break;
        }
    }
    // Phase picked up by the |1> branch of the control: i^e, times i when the
    // ancilla letter is Y (Y X = -iZ and Z = -1 there).
    const int phase = (p.phase_exp() + (lc == 'Y' ? 1 : 0)) & 3;
    if (phase == 1) {
        circuit.append(Gate::s(c));
    } else if (phase == 2) {
        circuit.append(Gate::z(c));
    } else if (phase == 3) {
        circuit.append(Gate::s(c)).append(Gate::z(c));
    }
    circuit.append(Gate::h(c));
    // The ancilla sits in (|0> + s|1>)/sqrt2 with s = (-1)^a, flipped again
    // when p anticommutes with X_c.
    const bool minus = (a == 1) != (lc == 'Y');
    if (minus) {
        circuit.append(Gate::x(c));
    }
    return circuit;
}

struct AncillaFailure {
    PauliOperator pauli{1};
    int label = 0;
    int outcome = 0;
    std::string reason;
};

struct AncillaReport {
    std::size_t ancillas = 0;
    std::size_t total = 0;
    std::size_t recoverable = 0;  // anticommute with some ancilla Z
    std::size_t factorizing = 0;  // commute with every ancilla Z
    std::vector<AncillaFailure> failures;
    bool ok() const { return failures.empty() && recoverable + factorizing == total; }
};

/// Checks, for every nontrivial Pauli on system + ancillas and every pure
/// component of the ensemble, that the measurement is either undone by
/// ancilla_recovery or acts as the system part alone.
inline AncillaReport ancilla_reduction_check(const LabeledEnsemble &e, std::size_t ell) {
    if (ell < 1 || ell > 2) {
        throw PreconditionError("ancilla count must be 1 or 2");
    }
    const std::size_t n = e.num_qubits();
    AncillaReport rep;
    rep.ancillas = ell;
    std::vector<std::pair<int, StabilizerState>> systems;
    std::vector<StabilizerState> padded;
    for (const auto &w : e.flatten()) {
        systems.emplace_back(w.label, w.state);
        padded.push_back(tensor_with_zeros(w.state, ell));
    }
    for (const auto &p : enumerate_hermitian_paulis(n + ell, false)) {
        ++rep.total;
        std::optional<std::size_t> anc;
        for (std::size_t k = 0; k < ell && !anc; ++k) {
            if (p.x(n + k)) {
                anc = k;
            }
        }
        auto fail = [&](int label, int a, std::string why) { rep.failures.push_back({p, label, a, std::move(why)}); };
        if (anc) {
            ++rep.recoverable;
            for (std::size_t i = 0; i < padded.size(); ++i) {
                if (outcome_probability(padded[i], p, 0) != Rational(1, 2)) {
                    fail(systems[i].first, 0, "outcome not balanced");
                    continue;
                }
                for (int a = 0; a < 2; ++a) {
                    auto post = measure_pauli(padded[i], p, a).post;
                    if (apply_clifford(post, ancilla_recovery(p, n, *anc, a)) != padded[i]) {
                        fail(systems[i].first, a, "recovery did not restore the input");
                    }
                }
            }
        } else {
            ++rep.factorizing;
            const PauliOperator sys = p.slice(0, n);
            for (std::size_t i = 0; i < padded.size(); ++i) {
                for (int a = 0; a < 2; ++a) {
                    const Rational pr = outcome_probability(padded[i], p, a);
                    if (pr != (sys.is_trivial() ? Rational(a == 0 ? 1 : 0) : outcome_probability(systems[i].second, sys, a))) {
                        fail(systems[i].first, a, "statistics differ from the system part");
                        continue;
                    }
                    if (pr == Rational(0) || sys.is_trivial()) {
                        continue;
                    }
                    auto full = measure_pauli(padded[i], p, a).post;
                    auto reduced = tensor_with_zeros(measure_pauli(systems[i].second, sys, a).post, ell);
                    if (full != reduced) {
                        fail(systems[i].first, a, "post-measurement state does not factorize");
                    }
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Leave-one-out strategies on the six-state set

/// Perfect strategy for the six-state set with label `index` removed. For
/// index 6 this is the hand-built protocol: Z on qubit 3, then Z on qubit 2
/// or 1 depending on the outcome, then an X measurement where needed. Other
/// indices come from the search.
inline Strategy leave_one_out_strategy(int index) {
    if (index < 1 || index > 6) {
        throw IndexError("leave-one-out index must be in 1..6");
    }
    if (index == 6) {
        auto P = [](const char *s) { return PauliOperator::from_string(s); };
        using N = StrategyNode;
        auto zero_branch = N::measure(P("IZI"), N::leaf(3), N::measure(P("XII"), N::leaf(1), N::leaf(4)));
        auto one_branch = N::measure(P("ZII"), N::measure(P("IXI"), N::leaf(2), N::leaf(5)), N::leaf(3));
        return N::measure(P("IIZ"), zero_branch, one_branch);
    }
    auto result = is_perfectly_discriminable(six_state_set().without({index}), {3, 1});
    if (result.verdict != Verdict::Yes) {
        throw PreconditionError("no depth-3 strategy found for index " + std::to_string(index));
    }
    return result.strategy;
}

// ---------------------------------------------------------------------------
// Overlap witnesses on the 3n-qubit block family

struct BlockWitness {
    PauliOperator pauli{1};
    int case_kind = 0;      // 1: anticommutes with some Z, 2: only with X's
    std::size_t block = 0;  // block holding the anticommuting qubit
    int label = 0;          // psi_mu
    int other_label = 0;    // psi_mu'
    Rational prob_of_zero;  // p_mu(0)
    Rational overlap;       // |<psi_mu'| P |psi_mu>|^2
    Rational expected;      // 2^-2n for case 1, 1 for case 2
    bool ok() const { return prob_of_zero == Rational(1, 2) && overlap == expected; }
};

/// The explicit pair for one nontrivial Pauli, built from the block structure.
inline BlockWitness block_witness(const GeneralizedSet &set, const BooleanFunction &f, const PauliOperator &p) {
    const std::size_t n = set.n;
    if (p.num_qubits() != 3 * n) {
        throw DimensionError("Pauli width must be 3n");
    }
    if (p.is_trivial()) {
        throw PreconditionError("the identity has no witness");
    }
    auto label_of = [&](const GeneralizedMember &m) {
        for (std::size_t i = 0; i < set.members.size(); ++i) {
            const auto &x = set.members[i];
            if (x.rotation == m.rotation && x.alpha == m.alpha && x.beta0 == m.beta0 && x.beta1 == m.beta1) {
                return static_cast<int>(i) + 1;
            }
        }
        throw PreconditionError("member not present in the set");
    };
    auto block_bits = [&](std::size_t block, bool use_x) {
        std::size_t bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool b = use_x ? p.x(block * n + i) : p.z(block * n + i);
            bits = (bits << 1) | (b ? 1U : 0U);
        }
        return bits;
    };
    const auto f0 = f.preimage(0);
    const auto f1 = f.preimage(1);
    BlockWitness w;
    w.pauli = p;
    std::optional<std::size_t> qx;
    std::optional<std::size_t> qz;
    for (std::size_t q = 0; q < 3 * n; ++q) {
        if (!qx && p.x(q)) {
            qx = q;
        }
        if (!qz && p.z(q)) {
            qz = q;
        }
    }
    GeneralizedMember mu;
    GeneralizedMember mu2;
    if (qx) {
        // Some Z_q anticommutes with p.
        w.case_kind = 1;
        w.block = *qx / n;
        const std::size_t gamma = block_bits(w.block, true);
        auto beta0 = crossing_point(f, gamma);
        if (!beta0) {
            throw PreconditionError("f has a nonvanishing linear structure");
        }
        const int j = static_cast<int>(w.block);
        mu = {(j + 1) % 3, 0, *beta0, f1.front()};
        mu2 = {(j + 2) % 3, 0, f0.front(), *beta0 ^ gamma};
        w.expected = dyadic(static_cast<unsigned>(2 * n));
    } else {
        w.case_kind = 2;
        w.block = *qz / n;
        const std::size_t delta = block_bits(w.block, false);
        const int j = static_cast<int>(w.block);
        mu = {j, 0, f0.front(), f1.front()};
        mu2 = {j, delta, f0.front(), f1.front()};
        w.expected = Rational(1);
    }
    w.label = label_of(mu);
    w.other_label = label_of(mu2);
    const auto psi = generalized_state(n, mu);
    const auto psi2 = generalized_state(n, mu2);
    w.prob_of_zero = outcome_probability(psi, p, 0);
    w.overlap = overlap_squared(psi2, apply_pauli(psi, p));
    return w;
}

}  // namespace stabdisc
