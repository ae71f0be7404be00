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

#include "stabdisc/discrimination.hpp"

#include <set>
#include <string>

#include "gtest/gtest.h"

#include "dense_oracle.hpp"
#include "stabdisc/channel.hpp"
#include "stabdisc/statevector.hpp"
#include "test_util.hpp"

using namespace stabdisc;

namespace {

PauliOperator P(const char *s) { return PauliOperator::from_string(s); }
StabilizerState K(const char *s) { return StabilizerState::from_kets(s); }

}  // namespace

TEST(discrimination, split_probabilities) {
    auto post = normalize_posterior(six_state_set().flatten());
    auto b = split(post, P("IIZ"));
    EXPECT_EQ(b[0].prob, Rational(1, 2));
    EXPECT_EQ(b[1].prob, Rational(1, 2));
    EXPECT_EQ(posterior_labels(b[0].posterior), (std::vector<int>{1, 3, 4, 6}));
    EXPECT_EQ(best_guess(b[0].posterior).second, Rational(1, 3));
}

TEST(discrimination, first_round_six_state_set) {
    const auto e = six_state_set();
    auto rep = first_round_report(e);
    ASSERT_EQ(rep.per_pauli.size(), 63U);
    EXPECT_TRUE(rep.holds_for_all());
    for (const auto &r : rep.per_pauli) {
        for (const auto &[label, p0] : r.prob_of_zero) {
            EXPECT_TRUE(p0 == Rational(0) || p0 == Rational(1, 2) || p0 == Rational(1));
        }
        for (const auto &w : r.witnesses) {
            EXPECT_NE(w.label, w.other_label);
            EXPECT_GT(w.overlap, Rational(0));
        }
    }
    auto z1 = analyze_first_round(e, P("ZII"));
    EXPECT_NE(std::find(z1.balanced.begin(), z1.balanced.end(), 1), z1.balanced.end());
    EXPECT_NE(std::find(z1.balanced.begin(), z1.balanced.end(), 4), z1.balanced.end());
    EXPECT_EQ(overlap_squared(K("-10"), apply_pauli(K("+10"), P("ZII"))), Rational(1));
}

TEST(discrimination, first_round_witness_cap) {
    auto rep = first_round_report(six_state_set(), {1});
    for (const auto &r : rep.per_pauli) {
        EXPECT_EQ(r.witnesses.size(), 1U);
    }
}

TEST(discrimination, decides_small_examples) {
    auto basis = LabeledEnsemble::uniform_pure({K("0"), K("1")});
    auto yes = is_perfectly_discriminable(basis);
    ASSERT_EQ(yes.verdict, Verdict::Yes);
    EXPECT_EQ(*yes.strategy, *StrategyNode::measure(P("Z"), StrategyNode::leaf(1), StrategyNode::leaf(2)));

    auto bad = is_perfectly_discriminable(LabeledEnsemble::uniform_pure({K("0"), K("+")}));
    EXPECT_EQ(bad.verdict, Verdict::No);
    ASSERT_TRUE(bad.base_pair.has_value());
    EXPECT_EQ(bad.base_pair->overlap, Rational(1, 2));

    EXPECT_THROW(is_perfectly_discriminable(basis, {0, 1}), PreconditionError);
}

TEST(discrimination, six_state_set_is_refuted_in_round_one) {
    for (unsigned threads : {1U, 4U}) {
        auto r = is_perfectly_discriminable(six_state_set(), {8, threads});
        EXPECT_EQ(r.verdict, Verdict::No);
        EXPECT_EQ(r.depth_searched, 1);
        ASSERT_EQ(r.refutations.size(), 63U);
        for (const auto &ref : r.refutations) {
            EXPECT_TRUE(ref.pair.has_value()) << ref.pauli;
        }
    }
}

TEST(discrimination, threads_give_identical_strategies) {
    for (int index = 1; index <= 6; ++index) {
        auto e = six_state_set().without({index});
        auto a = is_perfectly_discriminable(e, {8, 1});
        auto b = is_perfectly_discriminable(e, {8, 4});
        ASSERT_EQ(a.verdict, Verdict::Yes);
        ASSERT_EQ(b.verdict, Verdict::Yes);
        EXPECT_EQ(*a.strategy, *b.strategy);
        EXPECT_EQ(evaluate_strategy(e, *a.strategy), Rational(1));
    }
}

TEST(discrimination, every_orthogonal_one_and_two_qubit_set) {
    for (std::size_t n : {1U, 2U}) {
        const auto all = enumerate_pure_stabilizer_states(n);
        const std::size_t m = all.size();
        std::vector<std::vector<bool>> orth(m, std::vector<bool>(m));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                orth[i][j] = overlap_squared(all[i], all[j]) == Rational(0);
            }
        }
        std::size_t sets = 0;
        std::vector<std::size_t> clique;
        auto check = [&] {
            std::vector<StabilizerState> states;
            for (auto i : clique) {
                states.push_back(all[i]);
            }
            auto r = is_perfectly_discriminable(LabeledEnsemble::uniform_pure(states));
            ++sets;
            ASSERT_EQ(r.verdict, Verdict::Yes);
            EXPECT_EQ(evaluate_strategy(LabeledEnsemble::uniform_pure(states), *r.strategy), Rational(1));
        };
        std::function<void(std::size_t)> grow = [&](std::size_t from) {
            if (clique.size() >= 2) {
                check();
            }
            for (std::size_t v = from; v < m; ++v) {
                bool ok = std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return orth[u][v]; });
                if (ok) {
                    clique.push_back(v);
                    grow(v + 1);
                    clique.pop_back();
                }
            }
        };
        grow(0);
        EXPECT_GT(sets, 0U);
    }
}

TEST(discrimination, success_bound_six_state_set) {
    const auto e = six_state_set();
    EXPECT_EQ(success_probability_lower_bound(e, 0).value, Rational(1, 6));
    Rational last(0);
    for (int d = 0; d <= 3; ++d) {
        auto b = success_probability_lower_bound(e, d);
        EXPECT_GE(b.value, last);
        EXPECT_EQ(evaluate_strategy(e, *b.strategy), b.value);
        EXPECT_LE(b.strategy->depth(), d);
        last = b.value;
    }
    EXPECT_GE(last, Rational(5, 6));
    EXPECT_LT(to_double(last), 0.9603);
}

TEST(discrimination, success_bound_mixed_pair) {
    auto b = success_probability_lower_bound(mixed_pair(), 2);
    EXPECT_LT(to_double(b.value), 0.943);
    EXPECT_EQ(evaluate_strategy(mixed_pair(), *b.strategy), b.value);
}

TEST(discrimination, mixed_pair_first_round) {
    auto rep = first_round_report(mixed_pair());
    ASSERT_EQ(rep.per_pauli.size(), 15U);
    EXPECT_TRUE(rep.holds_for_all());
    EXPECT_EQ(is_perfectly_discriminable(mixed_pair()).verdict, Verdict::No);
}

TEST(discrimination, leave_one_out) {
    for (int index = 1; index <= 6; ++index) {
        auto s = leave_one_out_strategy(index);
        EXPECT_LE(s->depth(), 3);
        EXPECT_EQ(evaluate_strategy(six_state_set().without({index}), *s), Rational(1)) << index;
    }
    auto six = leave_one_out_strategy(6);
    EXPECT_EQ(*six->pauli, P("IIZ"));
    EXPECT_EQ(*six->children[0]->pauli, P("IZI"));
    EXPECT_EQ(*six->children[1]->pauli, P("ZII"));
    EXPECT_THROW(leave_one_out_strategy(7), IndexError);
}

TEST(discrimination, ancilla_recovery_smallest_case) {
    const auto p = P("IX");
    const auto input = tensor_with_zeros(K("+"), 1);
    for (int a = 0; a < 2; ++a) {
        auto m = measure_pauli(input, p, a);
        EXPECT_EQ(m.prob_of_zero, Rational(1, 2));
        EXPECT_EQ(apply_clifford(m.post, ancilla_recovery(p, 1, 0, a)), input);
    }
    EXPECT_THROW(ancilla_recovery(P("XZ"), 1, 0, 0), PreconditionError);
}

TEST(discrimination, ancilla_recovery_dense) {
    // Dense check: U_rec (1 + (-1)^a P)/sqrt2 |psi,0> = |psi,0> up to phase.
    std::mt19937_64 rng(9);
    const auto six = six_state_set();
    std::vector<PauliOperator> ps{P("XZIX")};
    for (int i = 0; i < 40; ++i) {
        auto q = pauli_from_index(4, rng() % 256);
        q.set_letter(3, (rng() & 1) != 0 ? 'X' : 'Y');
        if ((rng() & 1) != 0) {
            q = q.negated();
        }
        ps.push_back(q);
    }
    for (const auto &p : ps) {
        for (const auto &item : six.items()) {
            const auto input = tensor_with_zeros(item.mixture[0].state, 1);
            const auto v = testutil::dense_state(input);
            for (int a = 0; a < 2; ++a) {
                oracle::Matrix proj = (oracle::Matrix::Identity(16, 16) + (a == 0 ? 1.0 : -1.0) * oracle::pauli(p.str())) / 2.0;
                oracle::Vector out = proj * v;
                EXPECT_NEAR(out.squaredNorm(), 0.5, 1e-12);
                out /= std::sqrt(out.squaredNorm());
                out = testutil::circuit_matrix(ancilla_recovery(p, 3, 0, a)) * out;
                EXPECT_NEAR(oracle::overlap2(out, v), 1.0, 1e-12) << p << " a=" << a;
            }
        }
    }
}

TEST(discrimination, ancilla_reduction) {
    auto one = ancilla_reduction_check(six_state_set(), 1);
    EXPECT_EQ(one.total, 255U);
    EXPECT_TRUE(one.ok());
    EXPECT_EQ(one.recoverable + one.factorizing, 255U);
    auto two = ancilla_reduction_check(six_state_set(), 2);
    EXPECT_EQ(two.total, 1023U);
    EXPECT_TRUE(two.ok());
    EXPECT_THROW(ancilla_reduction_check(six_state_set(), 3), PreconditionError);

    // Z on the ancilla alone: deterministic, system untouched.
    const auto in = tensor_with_zeros(K("+10"), 1);
    EXPECT_EQ(outcome_probability(in, P("IIIZ"), 0), Rational(1));
    EXPECT_EQ(measure_pauli(in, P("IIIZ"), 0).post, in);

    // X on qubit 1 has the same first-round statistics with and without the ancilla.
    const auto six = six_state_set();
    for (const auto &item : six.items()) {
        const auto &s = item.mixture[0].state;
        EXPECT_EQ(outcome_probability(s, P("XII"), 0), outcome_probability(tensor_with_zeros(s, 1), P("XIII"), 0));
    }
}

TEST(discrimination, block_witnesses_n2) {
    const auto f = BooleanFunction::inner_product(2);
    const auto set = generalized_set(2, f);
    std::size_t case1 = 0;
    for (const auto &p : enumerate_hermitian_paulis(6, false)) {
        auto w = block_witness(set, f, p);
        EXPECT_TRUE(w.ok()) << p << " case " << w.case_kind;
        case1 += w.case_kind == 1 ? 1 : 0;
    }
    EXPECT_EQ(case1, 4096U - 64U);
}

TEST(discrimination, block_witness_n1_analogue_matches_six_state_set) {
    // The n = 1 pattern with f(b) = b is the six-state set; its witnesses still hold.
    const auto f = BooleanFunction::from_string("01");
    const auto set = generalized_set(1, f, false);
    for (const auto &p : enumerate_hermitian_paulis(3, false)) {
        EXPECT_TRUE(block_witness(set, f, p).ok()) << p;
    }
}

TEST(channel, complement_and_images) {
    auto rep = cspo_channel_check();
    EXPECT_TRUE(rep.complement_identity);
    EXPECT_EQ(rep.inputs, 1080U);
    EXPECT_EQ(rep.kraus_operators, 7U);
    EXPECT_TRUE(rep.failures.empty()) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_TRUE(rep.ok());

    auto fixed = cspo_channel_output(K("000"));
    ASSERT_EQ(fixed.size(), 1U);
    EXPECT_EQ(fixed[0].kraus, 6U);
    EXPECT_EQ(fixed[0].state, K("000"));

    auto own = cspo_channel_output(K("+10"));
    ASSERT_EQ(own.size(), 1U);
    EXPECT_EQ(own[0].kraus, 0U);

    auto plus = cspo_channel_output(K("+++"));
    ASSERT_EQ(plus.size(), 4U);
    for (const auto &img : plus) {
        EXPECT_EQ(img.weight, Rational(1, 4));
    }
    EXPECT_EQ(plus.back().state, StabilizerState::from_strings({"+XXX", "+ZZI", "+IZZ"}));
}
