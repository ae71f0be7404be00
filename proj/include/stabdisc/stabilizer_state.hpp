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
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabdisc/clifford.hpp"
#include "stabdisc/errors.hpp"
#include "stabdisc/pauli.hpp"
#include "stabdisc/rational.hpp"

namespace stabdisc {

namespace detail {

/// Brings rows to reduced row echelon form over the symplectic columns
/// x_0..x_{n-1}, z_0..z_{n-1}, multiplying operators so that every row stays
/// an exact group element. Rows that reduce to a phase times the identity are
/// moved to the end. Returns the pivot column of each leading row; its size
/// is the rank.
inline std::vector<std::size_t> row_reduce(std::vector<PauliOperator> &rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) {
        return pivots;
    }
    const std::size_t n = rows.front().num_qubits();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
        std::size_t found = rank;
        while (found < rows.size() && !rows[found].symplectic_bit(col)) {
            ++found;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[found]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && rows[i].symplectic_bit(col)) {
                rows[i] = multiply(rows[i], rows[rank]);
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

}  // namespace detail

/// A pure stabilizer state given by n independent, pairwise commuting,
/// Hermitian signed generators. The generator list is kept as supplied (the
/// measurement rule acts on it by index); the reduced row echelon form is
/// computed once on construction and serves as the canonical form.
class StabilizerState {
   public:
    /// Validates and builds. Throws NonHermitian, NonCommuting,
    /// DependentGenerators or DimensionError.
    static StabilizerState from_generators(std::vector<PauliOperator> gens) {
        if (gens.empty()) {
            throw DimensionError("a stabilizer state needs at least one generator");
        }
        const std::size_t n = gens.front().num_qubits();
        for (const auto &g : gens) {
            if (g.num_qubits() != n) {
                throw DimensionError("generators act on different qubit counts");
            }
            if (!g.is_hermitian()) {
                throw NonHermitian("generator " + g.str() + " is not Hermitian");
            }
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                if (!commutes(gens[i], gens[j])) {
                    throw NonCommuting("generators " + gens[i].str() + " and " + gens[j].str() +
                                       " anticommute");
                }
            }
        }
        std::vector<PauliOperator> reduced = gens;
        if (detail::row_reduce(reduced).size() != gens.size()) {
            throw DependentGenerators("generators are not independent");
        }
        if (gens.size() != n) {
            throw DimensionError("need exactly " + std::to_string(n) + " generators, got " +
                                 std::to_string(gens.size()));
        }
        return StabilizerState(std::move(gens), std::move(reduced));
    }

    static StabilizerState from_strings(const std::vector<std::string> &texts) {
        std::vector<PauliOperator> gens;
        gens.reserve(texts.size());
        for (const auto &t : texts) {
            gens.push_back(PauliOperator::from_string(t));
        }
        return from_generators(std::move(gens));
    }

    /// |0...0>.
    static StabilizerState zero(std::size_t num_qubits) {
        std::vector<PauliOperator> gens;
        for (std::size_t q = 0; q < num_qubits; ++q) {
            gens.push_back(PauliOperator::single(num_qubits, q, 'Z'));
        }
        return from_generators(std::move(gens));
    }

    /// Product state from one symbol per qubit: '0', '1', '+', '-', 'r' (|+i>)
    /// or 'l' (|-i>). "+10" is |+>|1>|0>.
    static StabilizerState from_kets(std::string_view kets) {
        const std::size_t n = kets.size();
        std::vector<PauliOperator> gens;
        for (std::size_t q = 0; q < n; ++q) {
            char letter = 'Z';
            bool negative = false;
            switch (kets[q]) {
                case '0':
                    break;
                case '1':
                    negative = true;
                    break;
                case '+':
                    letter = 'X';
                    break;
                case '-':
                    letter = 'X';
                    negative = true;
                    break;
                case 'r':
                    letter = 'Y';
                    break;
                case 'l':
                    letter = 'Y';
                    negative = true;
                    break;
                default:
                    throw ParseError("bad ket symbol '" + std::string(1, kets[q]) + "'");
            }
            auto g = PauliOperator::single(n, q, letter);
            gens.push_back(negative ? g.negated() : g);
        }
        return from_generators(std::move(gens));
    }

    std::size_t num_qubits() const { return n_; }
    const std::vector<PauliOperator> &generators() const { return gens_; }

    /// Reduced row echelon generators: equal for two states iff the states
    /// are equal up to global phase.
    const std::vector<PauliOperator> &canonical_generators() const { return canonical_; }

    /// Compact byte string of the canonical form, usable as a hash key.
    std::string canonical_key() const {
        std::string key;
        key.reserve(n_ * (1 + 2 * PauliOperator::kMaxWords * 8));
        for (const auto &g : canonical_) {
            key.push_back(static_cast<char>(g.phase_exp()));
            for (std::size_t w = 0; w < g.num_words(); ++w) {
                append_word(key, g.x_words()[w]);
                append_word(key, g.z_words()[w]);
            }
        }
        return key;
    }

    friend bool operator==(const StabilizerState &a, const StabilizerState &b) {
        return a.n_ == b.n_ && a.canonical_ == b.canonical_;
    }

    /// Generators already known to be valid (used by the update rules).
    static StabilizerState trusted(std::vector<PauliOperator> gens) {
        std::vector<PauliOperator> reduced = gens;
        detail::row_reduce(reduced);
        return StabilizerState(std::move(gens), std::move(reduced));
    }

   private:
    StabilizerState(std::vector<PauliOperator> gens, std::vector<PauliOperator> canonical)
        : n_(gens.size()), gens_(std::move(gens)), canonical_(std::move(canonical)) {}

    static void append_word(std::string &key, std::uint64_t w) {
        for (int b = 0; b < 8; ++b) {
            key.push_back(static_cast<char>((w >> (8 * b)) & 0xFF));
        }
    }

    std::size_t n_ = 0;
    std::vector<PauliOperator> gens_;
    std::vector<PauliOperator> canonical_;
};

/// Canonical generator list (see StabilizerState::canonical_generators).
inline std::vector<PauliOperator> canonical_form(const StabilizerState &state) {
    return state.canonical_generators();
}

/// Each generator g replaced by U g U^dagger.
inline StabilizerState apply_clifford(const StabilizerState &state, const CliffordCircuit &circuit) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw DimensionError("circuit width " + std::to_string(circuit.num_qubits()) + " vs state width " +
                             std::to_string(state.num_qubits()));
    }
    std::vector<PauliOperator> gens;
    gens.reserve(state.num_qubits());
    for (const auto &g : state.generators()) {
        gens.push_back(circuit.conjugate(g));
    }
    return StabilizerState::trusted(std::move(gens));
}

inline StabilizerState apply_gate(const StabilizerState &state, const Gate &gate) {
    std::vector<PauliOperator> gens = state.generators();
    for (auto &g : gens) {
        conjugate_in_place(g, gate);
    }
    return StabilizerState::trusted(std::move(gens));
}

/// The state P|psi>, up to global phase: generators anticommuting with P
/// change sign.
inline StabilizerState apply_pauli(const StabilizerState &state, const PauliOperator &p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw DimensionError("Pauli and state widths differ");
    }
    std::vector<PauliOperator> gens = state.generators();
    for (auto &g : gens) {
        if (!commutes(g, p)) {
            g = g.negated();
        }
    }
    return StabilizerState::trusted(std::move(gens));
}

/// |psi> (x) |0>^ell: generators padded with identities, then Z on each
/// new qubit.
inline StabilizerState tensor_with_zeros(const StabilizerState &state, std::size_t ell) {
    const std::size_t n = state.num_qubits();
    const PauliOperator pad = PauliOperator::identity(ell);
    std::vector<PauliOperator> gens;
    gens.reserve(n + ell);
    for (const auto &g : state.generators()) {
        gens.push_back(ell == 0 ? g : g.tensor(pad));
    }
    for (std::size_t k = 0; k < ell; ++k) {
        gens.push_back(PauliOperator::single(n + ell, n + k, 'Z'));
    }
    return StabilizerState::trusted(std::move(gens));
}

/// <psi|p|psi> for Hermitian p: +1 if p is in the stabilizer, -1 if -p is,
/// 0 otherwise (p anticommutes with a generator).
inline int expectation(const StabilizerState &state, const PauliOperator &p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw DimensionError("Pauli and state widths differ");
    }
    if (!p.is_hermitian()) {
        throw NonHermitian("expectation of non-Hermitian " + p.str());
    }
    const auto &rows = state.canonical_generators();
    for (const auto &g : rows) {
        if (!commutes(g, p)) {
            return 0;
        }
    }
    // p commutes with a maximal stabilizer group, so +-p lies in it. Rows are
    // in echelon form with pivots at increasing columns; peel them off.
    const std::size_t n = state.num_qubits();
    PauliOperator residue = p;
    PauliOperator product = PauliOperator::identity(n);
    std::size_t col = 0;
    for (const auto &row : rows) {
        while (!row.symplectic_bit(col)) {
            ++col;
        }
        if (residue.symplectic_bit(col)) {
            residue = multiply(residue, row);
            product = multiply(product, row);
        }
        ++col;
    }
    return product.phase_exp() == p.phase_exp() ? 1 : -1;
}

struct MeasurementResult {
    /// Probability of outcome 0 for the observable as given; 0, 1/2 or 1.
    Rational prob_of_zero;
    int outcome = 0;
    StabilizerState post;
};

/// Projective measurement of the Hermitian observable p with
/// Pi_a = (1 + (-1)^a p)/2.
///
/// Deterministic outcomes leave the state untouched. Otherwise the lowest
/// index generator g_j anticommuting with p is replaced by (-1)^a p, and every
/// other anticommuting generator g_i becomes g_i g_j.
///
/// When the outcome is random and not forced, outcome 0 is reported; use the
/// overload taking a generator to sample.
inline MeasurementResult measure_pauli(const StabilizerState &state, const PauliOperator &p,
                                       std::optional<int> forced_outcome = std::nullopt) {
    if (p.num_qubits() != state.num_qubits()) {
        throw DimensionError("Pauli and state widths differ");
    }
    auto [observable, flip] = normalize_observable(p);
    if (observable.is_trivial()) {
        throw PreconditionError("measuring the identity");
    }
    if (forced_outcome && *forced_outcome != 0 && *forced_outcome != 1) {
        throw DomainError("forced outcome must be 0 or 1");
    }
    const auto &gens = state.generators();
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!commutes(gens[i], observable)) {
            pivot = i;
            break;
        }
    }
    if (!pivot) {
        int e = expectation(state, observable);
        int outcome = (e == 1) == !flip ? 0 : 1;
        if (forced_outcome && *forced_outcome != outcome) {
            throw ImpossibleOutcome("outcome " + std::to_string(*forced_outcome) + " of " + p.str() +
                                    " has probability 0");
        }
        return {Rational(outcome == 0 ? 1 : 0), outcome, state};
    }
    int outcome = forced_outcome.value_or(0);
    int observable_outcome = flip ? 1 - outcome : outcome;
    std::vector<PauliOperator> next = gens;
    const PauliOperator replaced = gens[*pivot];
    for (std::size_t i = *pivot + 1; i < next.size(); ++i) {
        if (!commutes(next[i], observable)) {
            next[i] = multiply(next[i], replaced);
        }
    }
    next[*pivot] = observable_outcome == 0 ? observable : observable.negated();
    return {Rational(1, 2), outcome, StabilizerState::trusted(std::move(next))};
}

/// Sampling overload: balanced outcomes take the low bit of rng().
template <std::uniform_random_bit_generator Rng>
MeasurementResult measure_pauli(const StabilizerState &state, const PauliOperator &p, Rng &rng) {
    auto first = measure_pauli(state, p);
    if (first.prob_of_zero != Rational(1, 2)) {
        return first;
    }
    int outcome = static_cast<int>(rng() & 1U);
    if (outcome == 0) {
        return first;
    }
    return measure_pauli(state, p, 1);
}

/// Probability of outcome a for observable p, without computing the post-state.
inline Rational outcome_probability(const StabilizerState &state, const PauliOperator &p, int a) {
    int e = expectation(state, p);
    if (e == 0) {
        return Rational(1, 2);
    }
    return Rational((e == 1) == (a == 0) ? 1 : 0);
}

/// |<a|b>|^2, exactly.
///
/// Let M_ij = 1 when generator a_i anticommutes with b_j. Products of
/// a-generators in the left kernel of M are, up to sign, exactly the shared
/// stabilizer elements. The overlap vanishes if one of them appears with
/// opposite signs; otherwise it is 2^-rank(M).
inline Rational overlap_squared(const StabilizerState &a, const StabilizerState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("overlap of states with different widths");
    }
    const std::size_t n = a.num_qubits();
    const auto &ga = a.canonical_generators();
    const auto &gb = b.canonical_generators();
    // Row i: anticommutation of a_i with each b_j, plus which a-generators
    // the row is currently a product of.
    struct Row {
        std::vector<bool> bits;
        std::vector<bool> combo;
    };
    std::vector<Row> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].bits.resize(n);
        rows[i].combo.assign(n, false);
        rows[i].combo[i] = true;
        for (std::size_t j = 0; j < n; ++j) {
            rows[i].bits[j] = !commutes(ga[i], gb[j]);
        }
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t found = rank;
        while (found < n && !rows[found].bits[col]) {
            ++found;
        }
        if (found == n) {
            continue;
        }
        std::swap(rows[rank], rows[found]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != rank && rows[i].bits[col]) {
                for (std::size_t j = 0; j < n; ++j) {
                    rows[i].bits[j] = rows[i].bits[j] != rows[rank].bits[j];
                    rows[i].combo[j] = rows[i].combo[j] != rows[rank].combo[j];
                }
            }
        }
        ++rank;
    }
    for (std::size_t i = rank; i < n; ++i) {
        PauliOperator shared = PauliOperator::identity(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i].combo[j]) {
                shared = multiply(shared, ga[j]);
            }
        }
        if (expectation(b, shared) != 1) {
            return Rational(0);
        }
    }
    return dyadic(static_cast<unsigned>(rank));
}

}  // namespace stabdisc
