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

#include "stabdisc/statevector.hpp"

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "gtest/gtest.h"

#include "dense_oracle.hpp"
#include "test_util.hpp"

using namespace stabdisc;

namespace {

double distance(const StateVector &v, const oracle::Vector &w) {
    double d = 0.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        d = std::max(d, std::abs(v[k] - w(static_cast<Eigen::Index>(k))));
    }
    return d;
}

}  // namespace

TEST(statevector, from_kets_matches_oracle) {
    for (std::string k : {"0", "1", "+", "-", "r", "l", "+10", "r-1l"}) {
        EXPECT_LT(distance(StateVector::from_kets(k), oracle::kets(k)), 1e-15) << k;
    }
    EXPECT_EQ(basis_label(3, 2), "010");
    EXPECT_THROW(StateVector(13), DimensionError);
}

TEST(statevector, cch_respects_control_polarity) {
    auto v = apply_gate(StateVector::from_kets("110"), DenseGate{CCH{0, true, 1, false, 2}});
    EXPECT_EQ(v.as_basis_state(), std::optional<std::size_t>{0b110});

    auto w = apply_gate(StateVector::from_kets("+10"), DenseGate{CCH{1, true, 2, false, 0}});
    EXPECT_EQ(w.as_basis_state(), std::optional<std::size_t>{0b010});

    EXPECT_THROW(apply_gate(StateVector(3), DenseGate{CCH{0, true, 0, false, 2}}), IndexError);
    EXPECT_THROW(apply_gate(StateVector(3), DenseGate{CCH{0, true, 1, false, 3}}), IndexError);
}

TEST(statevector, cch_is_unitary_for_all_polarities) {
    for (int pol = 0; pol < 4; ++pol) {
        for (std::size_t t = 0; t < 3; ++t) {
            std::size_t c1 = (t + 1) % 3;
            std::size_t c2 = (t + 2) % 3;
            auto u = gate_matrix(3, DenseGate{CCH{c1, (pol & 1) != 0, c2, (pol & 2) != 0, t}});
            EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(statevector, clifford_gates_match_oracle_matrices) {
    for (const Gate &g : {Gate::h(1), Gate::s(0), Gate::x(2), Gate::z(1), Gate::cnot(2, 0), Gate::cz(0, 2)}) {
        auto lib = gate_matrix(3, DenseGate{g});
        EXPECT_LT((lib - testutil::gate_matrix(3, g)).cwiseAbs().maxCoeff(), 1e-12) << g.str();
    }
}

TEST(statevector, readout_circuit_table) {
    const std::vector<std::pair<std::string, std::string>> rows{
        {"+10", "010"}, {"0+1", "001"}, {"10+", "100"}, {"-10", "110"}, {"0-1", "011"}, {"10-", "101"},
    };
    const auto circuit = readout_circuit();
    ASSERT_EQ(circuit.size(), 3U);
    std::set<std::size_t> outputs;
    for (const auto &[in, out] : rows) {
        auto v = apply_gates(StateVector::from_kets(in), circuit);
        auto hit = v.as_basis_state(1e-12);
        ASSERT_TRUE(hit.has_value()) << in;
        EXPECT_EQ(basis_label(3, *hit), out) << in;
        outputs.insert(*hit);
    }
    EXPECT_EQ(outputs.size(), 6U);
}

TEST(statevector, apply_pauli_matches_oracle) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = pauli_from_index(3, rng() % 64);
        p.set_phase_exp(static_cast<int>(rng() % 4));
        auto lib = pauli_matrix(p);
        EXPECT_LT((lib - oracle::pauli(p.str())).cwiseAbs().maxCoeff(), 1e-12) << p;
    }
}

TEST(statevector, project_pauli_examples) {
    auto z = project_pauli(StateVector::from_kets("0"), PauliOperator::from_string("Z"), 0);
    EXPECT_NEAR(z.prob, 1.0, 1e-12);
    ASSERT_TRUE(z.post.has_value());
    EXPECT_LT(distance(*z.post, oracle::kets("0")), 1e-12);

    auto zero = project_pauli(StateVector::from_kets("0"), PauliOperator::from_string("Z"), 1);
    EXPECT_NEAR(zero.prob, 0.0, 1e-12);
    EXPECT_FALSE(zero.post.has_value());

    auto x1 = project_pauli(StateVector::from_kets("0+1"), PauliOperator::from_string("XII"), 0);
    EXPECT_NEAR(x1.prob, 0.5, 1e-12);
    ASSERT_TRUE(x1.post.has_value());
    EXPECT_LT(distance(*x1.post, oracle::kets("++1")), 1e-12);
}

TEST(statevector, projector_is_idempotent) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = pauli_from_index(3, 1 + rng() % 63);
        Eigen::MatrixXcd pm = pauli_matrix(p);
        Eigen::MatrixXcd proj = (Eigen::MatrixXcd::Identity(8, 8) + pm) / 2.0;
        EXPECT_LT((proj * proj - proj).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(statevector, projection_agrees_with_tableau_measurement) {
    std::mt19937_64 rng(500);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 4;
        auto s = apply_clifford(StabilizerState::zero(n), testutil::random_circuit(n, 20, rng));
        auto v = to_statevector(s);
        auto p = pauli_from_index(n, 1 + rng() % ((std::uint64_t{1} << (2 * n)) - 1));
        for (int a : {0, 1}) {
            auto dense = project_pauli(v, p, a);
            Rational exact = outcome_probability(s, p, a);
            EXPECT_NEAR(dense.prob, to_double(exact), 1e-12);
            if (exact != Rational(0)) {
                auto post = measure_pauli(s, p, a).post;
                EXPECT_NEAR(overlap_squared(to_statevector(post), *dense.post), 1.0, 1e-12);
            }
        }
    }
}

TEST(statevector, to_statevector_matches_oracle) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 4;
        auto s = apply_clifford(StabilizerState::zero(n), testutil::random_circuit(n, 15, rng));
        auto v = to_statevector(s);
        EXPECT_NEAR(v.norm_squared(), 1.0, 1e-12);
        auto w = testutil::dense_state(s);
        Eigen::Map<const Eigen::VectorXcd> mv(v.amplitudes().data(), static_cast<Eigen::Index>(v.dim()));
        EXPECT_NEAR(oracle::overlap2(mv, w), 1.0, 1e-12);
    }
}

TEST(statevector, identify_stabilizer_state) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = apply_clifford(StabilizerState::zero(3), testutil::random_circuit(3, 20, rng));
        auto found = identify_stabilizer_state(to_statevector(s));
        ASSERT_TRUE(found.has_value());
        EXPECT_EQ(*found, s);
    }
    // T|+> is not a stabilizer state.
    const double h = 1.0 / std::sqrt(2.0);
    auto t = StateVector::from_amplitudes(1, {h, h * std::polar(1.0, M_PI / 4)});
    EXPECT_FALSE(identify_stabilizer_state(t).has_value());
}

TEST(statevector, entropy_examples) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(StateVector::from_kets("0"))), 0.0, 1e-9);
    auto mixed = DensityMatrix::mixture({{0.5, StateVector::from_kets("0")}, {0.5, StateVector::from_kets("1")}});
    EXPECT_NEAR(von_neumann_entropy(mixed), 1.0, 1e-12);

    // Same density matrix from a different decomposition.
    auto again = DensityMatrix::mixture({{0.5, StateVector::from_kets("+")}, {0.5, StateVector::from_kets("-")}});
    EXPECT_NEAR(von_neumann_entropy(again), 1.0, 1e-12);

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = apply_clifford(StabilizerState::zero(3), testutil::random_circuit(3, 20, rng));
        EXPECT_LT(von_neumann_entropy(DensityMatrix::pure(to_statevector(s))), 1e-9);
    }

    auto bad = DensityMatrix::mixture({{0.7, StateVector::from_kets("0")}});
    EXPECT_THROW(von_neumann_entropy(bad), DomainError);
}

TEST(statevector, entropy_of_z3_posterior_on_six_states) {
    // Outcome 0 of Z on qubit 3 keeps |+10>, |-10> (weight 1/3 each) and
    // collapses |10+>, |10-> onto |100> (1/6 each): three orthogonal states
    // with weight 1/3, so S = log2 3.
    const auto z3 = PauliOperator::from_string("IIZ");
    std::vector<std::pair<double, StateVector>> terms;
    for (std::string k : {"+10", "0+1", "10+", "-10", "0-1", "10-"}) {
        auto proj = project_pauli(StateVector::from_kets(k), z3, 0);
        if (proj.post) {
            terms.emplace_back(proj.prob / 6.0 / 0.5, *proj.post);
        }
    }
    EXPECT_EQ(terms.size(), 4U);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::mixture(terms)), std::log2(3.0), 1e-9);
}
