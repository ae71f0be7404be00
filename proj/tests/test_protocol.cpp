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

#include "stabdisc/protocol.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace stabdisc;

TEST(protocol, full_quantum_always_succeeds) {
    auto rec = simulate(Prover::full_quantum(), 100, 7);
    EXPECT_EQ(count_successes(rec), 100U);
    for (std::size_t t = 0; t < rec.size(); ++t) {
        EXPECT_EQ(rec[t].trial, t);
        EXPECT_GE(rec[t].label, 1);
        EXPECT_LE(rec[t].label, 6);
    }
}

TEST(protocol, constant_guess_rate) {
    auto rec = simulate(Prover::stabilizer(StrategyNode::leaf(1)), 60000, 3);
    const double rate = static_cast<double>(count_successes(rec)) / 60000.0;
    EXPECT_NEAR(rate, 1.0 / 6.0, 3 * std::sqrt(5.0 / 36.0 / 60000.0));
}

TEST(protocol, reproducible_and_thread_independent) {
    auto prover = Prover::stabilizer(leave_one_out_strategy(6));
    auto a = simulate(prover, 2000, 99, 1);
    auto b = simulate(prover, 2000, 99, 4);
    auto c = simulate(prover, 2000, 100, 1);
    ASSERT_EQ(a.size(), b.size());
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].label, b[i].label);
        EXPECT_EQ(a[i].guess, b[i].guess);
        differs = differs || a[i].label != c[i].label;
    }
    EXPECT_TRUE(differs);
}

TEST(protocol, strategy_rate_matches_exact_value) {
    auto strategy = leave_one_out_strategy(6);
    const double exact = to_double(evaluate_strategy(six_state_set(), *strategy));
    EXPECT_GE(exact, 5.0 / 6.0);
    const std::size_t n = 100000;
    auto rec = simulate(Prover::stabilizer(strategy), n, 2024, 4);
    const double rate = static_cast<double>(count_successes(rec)) / static_cast<double>(n);
    EXPECT_NEAR(rate, exact, 3 * std::sqrt(exact * (1 - exact) / static_cast<double>(n)));
}

TEST(protocol, custom_prover) {
    auto rec = simulate(Prover::make_custom("oracle", [](int label, std::mt19937_64 &) { return label; }), 10, 1);
    EXPECT_EQ(count_successes(rec), 10U);
    EXPECT_THROW(simulate(Prover::make_custom("empty", nullptr), 10, 1), PreconditionError);
    EXPECT_THROW(simulate(Prover::full_quantum(), 0, 1), PreconditionError);
}

TEST(protocol, binomial_certificate_reference_instance) {
    auto c = binomial_certificate(1000, 980, 0.9603);
    EXPECT_NEAR(c.p_value, 3.4914797e-4, 1e-9);
    EXPECT_GE(c.confidence, 0.9996);
    EXPECT_NEAR(c.sigma_equiv, 3.3902, 1e-3);
    const double ref = binomial_upper_tail_reference(1000, 980, 0.9603);
    EXPECT_NEAR(c.p_value / ref, 1.0, 1e-10);

    EXPECT_GT(binomial_certificate(1000, 960, 0.9603).p_value, 0.4);
    EXPECT_NEAR(binomial_certificate(1000, 960, 0.9603).p_value, 0.56119, 1e-4);

    auto none = binomial_certificate(1000, 0, 0.9603);
    EXPECT_EQ(none.p_value, 1.0);
    EXPECT_TRUE(std::isinf(none.sigma_equiv) && none.sigma_equiv < 0);
    EXPECT_THROW(binomial_certificate(10, 11, 0.5), PreconditionError);
    EXPECT_THROW(binomial_certificate(10, 5, 1.0), DomainError);
}

TEST(protocol, p_value_monotone_and_matches_reference) {
    double last = 2.0;
    for (std::size_t k = 950; k <= 1000; ++k) {
        double p = binomial_upper_tail(1000, k, 0.9603);
        EXPECT_LT(p, last);
        last = p;
        const double ref = binomial_upper_tail_reference(1000, k, 0.9603);
        EXPECT_NEAR(p, ref, 1e-10 * std::max(ref, 1e-300) + 1e-300);
    }
}
