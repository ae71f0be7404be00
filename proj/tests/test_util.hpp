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

// Helpers shared by the unit tests: random Clifford circuits and dense
// reference matrices for library gate descriptions.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "stabdisc/clifford.hpp"
#include "stabdisc/stabilizer_state.hpp"

#include "dense_oracle.hpp"

namespace testutil {

inline oracle::Matrix gate_matrix(std::size_t n, const stabdisc::Gate &g) {
    using stabdisc::GateKind;
    switch (g.kind) {
        case GateKind::H:
            return oracle::embed1(n, g.q0, oracle::hadamard());
        case GateKind::S:
            return oracle::embed1(n, g.q0, oracle::phase_s());
        case GateKind::X:
            return oracle::embed1(n, g.q0, oracle::letter_matrix('X'));
        case GateKind::Z:
            return oracle::embed1(n, g.q0, oracle::letter_matrix('Z'));
        case GateKind::CNOT:
            return oracle::controlled(n, g.q0, g.q1, oracle::letter_matrix('X'));
        case GateKind::CZ:
            return oracle::controlled(n, g.q0, g.q1, oracle::letter_matrix('Z'));
    }
    return {};
}

inline oracle::Matrix circuit_matrix(const stabdisc::CliffordCircuit &c) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.num_qubits());
    oracle::Matrix u = oracle::Matrix::Identity(dim, dim);
    for (const auto &g : c.gates()) {
        u = gate_matrix(c.num_qubits(), g) * u;
    }
    return u;
}

inline stabdisc::Gate random_gate(std::size_t n, std::mt19937_64 &rng) {
    using stabdisc::Gate;
    const int kinds = n >= 2 ? 6 : 4;
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(kinds));
    const std::size_t a = rng() % n;
    std::size_t b = rng() % n;
    if (n >= 2) {
        while (b == a) {
            b = rng() % n;
        }
    }
    switch (k) {
        case 0:
            return Gate::h(a);
        case 1:
            return Gate::s(a);
        case 2:
            return Gate::x(a);
        case 3:
            return Gate::z(a);
        case 4:
            return Gate::cnot(a, b);
        default:
            return Gate::cz(a, b);
    }
}

inline stabdisc::CliffordCircuit random_circuit(std::size_t n, std::size_t gates, std::mt19937_64 &rng) {
    stabdisc::CliffordCircuit c(n);
    for (std::size_t i = 0; i < gates; ++i) {
        c.append(random_gate(n, rng));
    }
    return c;
}

/// Dense vector of a stabilizer state through the oracle alone: the
/// normalized image of the first basis vector the projector prod (1+g)/2
/// does not annihilate.
inline oracle::Vector dense_state(const stabdisc::StabilizerState &s) {
    const std::size_t n = s.num_qubits();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    oracle::Matrix proj = oracle::Matrix::Identity(dim, dim);
    for (const auto &g : s.generators()) {
        proj = proj * (oracle::Matrix::Identity(dim, dim) + oracle::pauli(g.str())) / 2.0;
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
        oracle::Vector v = proj.col(k);
        if (v.norm() > 1e-6) {
            return v / v.norm();
        }
    }
    return {};
}

/// True when every generator fixes v.
inline bool stabilizes(const stabdisc::StabilizerState &s, const oracle::Vector &v) {
    for (const auto &g : s.generators()) {
        if ((oracle::pauli(g.str()) * v - v).cwiseAbs().maxCoeff() > 1e-10) {
            return false;
        }
    }
    return true;
}

}  // namespace testutil
