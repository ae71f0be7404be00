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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stabdisc/errors.hpp"
#include "stabdisc/pauli.hpp"

namespace stabdisc {

enum class GateKind : std::uint8_t { H, S, X, Z, CNOT, CZ };

inline std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
    }
    return "?";
}

inline bool is_two_qubit(GateKind kind) { return kind == GateKind::CNOT || kind == GateKind::CZ; }

/// One gate of the fixed Clifford gate set. For CNOT, q0 is the control.
struct Gate {
    GateKind kind = GateKind::H;
    std::size_t q0 = 0;
    std::size_t q1 = 0;

    static Gate h(std::size_t q) { return {GateKind::H, q, q}; }
    static Gate s(std::size_t q) { return {GateKind::S, q, q}; }
    static Gate x(std::size_t q) { return {GateKind::X, q, q}; }
    static Gate z(std::size_t q) { return {GateKind::Z, q, q}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, control, target}; }
    static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, a, b}; }

    std::string str() const {
        std::string out(gate_name(kind));
        out += " " + std::to_string(q0);
        if (is_two_qubit(kind)) {
            out += " " + std::to_string(q1);
        }
        return out;
    }

    /// Parses the form produced by str(), e.g. "CNOT 0 2".
    static Gate from_string(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string name;
        in >> name;
        Gate g;
        if (name == "H") {
            g.kind = GateKind::H;
        } else if (name == "S") {
            g.kind = GateKind::S;
        } else if (name == "X") {
            g.kind = GateKind::X;
        } else if (name == "Z") {
            g.kind = GateKind::Z;
        } else if (name == "CNOT" || name == "CX") {
            g.kind = GateKind::CNOT;
        } else if (name == "CZ") {
            g.kind = GateKind::CZ;
        } else {
            throw ParseError("unknown gate '" + name + "'");
        }
        if (!(in >> g.q0)) {
            throw ParseError("missing qubit in gate '" + std::string(text) + "'");
        }
        g.q1 = g.q0;
        if (is_two_qubit(g.kind) && !(in >> g.q1)) {
            throw ParseError("missing second qubit in gate '" + std::string(text) + "'");
        }
        return g;
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

inline void validate_gate(const Gate &g, std::size_t num_qubits) {
    if (g.q0 >= num_qubits || g.q1 >= num_qubits) {
        throw IndexError("gate " + g.str() + " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    if (is_two_qubit(g.kind) && g.q0 == g.q1) {
        throw IndexError("gate " + g.str() + " acts twice on one qubit");
    }
}

/// Conjugates p in place: p <- U p U^dagger for the single gate U.
inline void conjugate_in_place(PauliOperator &p, const Gate &g) {
    validate_gate(g, p.num_qubits());
    bool flip = false;
    const std::size_t a = g.q0;
    const std::size_t b = g.q1;
    switch (g.kind) {
        case GateKind::H: {
            bool xa = p.x(a);
            bool za = p.z(a);
            flip = xa && za;
            p.set_x(a, za);
            p.set_z(a, xa);
            break;
        }
        case GateKind::S: {
            bool xa = p.x(a);
            bool za = p.z(a);
            flip = xa && za;
            p.set_z(a, za != xa);
            break;
        }
        case GateKind::X:
            flip = p.z(a);
            break;
        case GateKind::Z:
            flip = p.x(a);
            break;
        case GateKind::CNOT: {
            bool xc = p.x(a);
            bool zc = p.z(a);
            bool xt = p.x(b);
            bool zt = p.z(b);
            flip = xc && zt && (xt == zc);
            p.set_x(b, xt != xc);
            p.set_z(a, zc != zt);
            break;
        }
        case GateKind::CZ: {
            bool xa = p.x(a);
            bool za = p.z(a);
            bool xb = p.x(b);
            bool zb = p.z(b);
            flip = xa && xb && (za != zb);
            p.set_z(a, za != xb);
            p.set_z(b, zb != xa);
            break;
        }
    }
    if (flip) {
        p.set_phase_exp(p.phase_exp() + 2);
    }
}

/// An ordered gate list; gates[0] acts first.
class CliffordCircuit {
   public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(std::size_t num_qubits) : n_(num_qubits) {}
    CliffordCircuit(std::size_t num_qubits, std::initializer_list<Gate> gates) : n_(num_qubits) {
        for (const Gate &g : gates) {
            append(g);
        }
    }

    std::size_t num_qubits() const { return n_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    CliffordCircuit &append(const Gate &g) {
        validate_gate(g, n_);
        gates_.push_back(g);
        return *this;
    }

    CliffordCircuit &append(const CliffordCircuit &other) {
        if (other.n_ != n_) {
            throw DimensionError("appending a circuit of a different width");
        }
        for (const Gate &g : other.gates_) {
            gates_.push_back(g);
        }
        return *this;
    }

    /// U^dagger as a circuit over the same gate set (S^dagger = S Z).
    CliffordCircuit inverse() const {
        CliffordCircuit inv(n_);
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            inv.gates_.push_back(*it);
            if (it->kind == GateKind::S) {
                inv.gates_.push_back(Gate::z(it->q0));
            }
        }
        return inv;
    }

    /// U p U^dagger.
    PauliOperator conjugate(PauliOperator p) const {
        if (p.num_qubits() != n_) {
            throw DimensionError("circuit and Pauli widths differ");
        }
        for (const Gate &g : gates_) {
            conjugate_in_place(p, g);
        }
        return p;
    }

    friend bool operator==(const CliffordCircuit &, const CliffordCircuit &) = default;

   private:
    std::size_t n_ = 0;
    std::vector<Gate> gates_;
};

}  // namespace stabdisc
