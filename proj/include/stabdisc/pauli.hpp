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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "stabdisc/errors.hpp"

namespace stabdisc {

/// An n-qubit Pauli operator i^phase_exp * P_1 (x) ... (x) P_n with each
/// P_k in {I, X, Y, Z}. Qubit k carries the bit pair (x_k, z_k):
/// (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. Because Y is a letter of its own,
/// an operator is Hermitian exactly when phase_exp is even, and its sign is
/// then (-1)^(phase_exp/2).
///
/// Bits are packed into 64-bit words; qubit k lives in bit (k % 64) of word
/// (k / 64). Qubit 0 is the leftmost letter of the text form.
class PauliOperator {
   public:
    static constexpr std::size_t kWordBits = 64;
    static constexpr std::size_t kMaxWords = 2;
    static constexpr std::size_t kMaxQubits = kWordBits * kMaxWords;

    PauliOperator() = default;

    explicit PauliOperator(std::size_t num_qubits) : n_(num_qubits) {
        if (num_qubits > kMaxQubits) {
            throw DimensionError("at most " + std::to_string(kMaxQubits) + " qubits are supported");
        }
    }

    static PauliOperator identity(std::size_t num_qubits) { return PauliOperator(num_qubits); }

    /// A single letter ('I', 'X', 'Y' or 'Z') on one qubit.
    static PauliOperator single(std::size_t num_qubits, std::size_t qubit, char letter) {
        PauliOperator p(num_qubits);
        p.check_index(qubit);
        p.set_letter(qubit, letter);
        return p;
    }

    /// Parses "+XIZ", "-IYI", "XX", "+iZ", "-iXY". '_' is accepted for I.
    static PauliOperator from_string(std::string_view text) {
        int phase = 0;
        std::size_t pos = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            phase = text[pos] == '-' ? 2 : 0;
            ++pos;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase += 1;
            ++pos;
        }
        PauliOperator p(text.size() - pos);
        for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
            char c = text[pos];
            if (c == '_') {
                c = 'I';
            }
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw ParseError("bad Pauli letter '" + std::string(1, text[pos]) + "' in '" +
                                 std::string(text) + "'");
            }
            p.set_letter(q, c);
        }
        p.phase_ = phase & 3;
        return p;
    }

    /// Inverse of from_string: "+XIZ", "-IYI", "+iZ", "-iXY".
    std::string str() const {
        static constexpr std::array<const char *, 4> kPrefix{"+", "+i", "-", "-i"};
        std::string out = kPrefix[static_cast<std::size_t>(phase_)];
        out.reserve(out.size() + n_);
        for (std::size_t q = 0; q < n_; ++q) {
            out.push_back(letter(q));
        }
        return out;
    }

    std::size_t num_qubits() const { return n_; }
    std::size_t num_words() const { return (n_ + kWordBits - 1) / kWordBits; }

    bool x(std::size_t q) const { return (x_[q / kWordBits] >> (q % kWordBits)) & 1U; }
    bool z(std::size_t q) const { return (z_[q / kWordBits] >> (q % kWordBits)) & 1U; }

    void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
    void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

    char letter(std::size_t q) const {
        static constexpr std::array<char, 4> kLetters{'I', 'X', 'Z', 'Y'};
        return kLetters[static_cast<std::size_t>(x(q)) | (static_cast<std::size_t>(z(q)) << 1)];
    }

    void set_letter(std::size_t q, char c) {
        set_x(q, c == 'X' || c == 'Y');
        set_z(q, c == 'Z' || c == 'Y');
    }

    int phase_exp() const { return phase_; }
    void set_phase_exp(int e) { phase_ = ((e % 4) + 4) % 4; }

    bool is_hermitian() const { return (phase_ & 1) == 0; }

    /// +1 or -1. Only meaningful for Hermitian operators.
    int sign() const {
        if (!is_hermitian()) {
            throw NonHermitian("sign of non-Hermitian Pauli " + str());
        }
        return phase_ == 0 ? 1 : -1;
    }

    /// True when every letter is I (any phase).
    bool is_trivial() const {
        for (std::size_t w = 0; w < kMaxWords; ++w) {
            if (x_[w] | z_[w]) {
                return false;
            }
        }
        return true;
    }

    bool is_identity() const { return phase_ == 0 && is_trivial(); }

    std::size_t weight() const {
        std::size_t total = 0;
        for (std::size_t w = 0; w < kMaxWords; ++w) {
            total += static_cast<std::size_t>(std::popcount(x_[w] | z_[w]));
        }
        return total;
    }

    PauliOperator negated() const {
        PauliOperator r = *this;
        r.phase_ = (phase_ + 2) & 3;
        return r;
    }

    /// Same letters with phase_exp = 0.
    PauliOperator unsigned_part() const {
        PauliOperator r = *this;
        r.phase_ = 0;
        return r;
    }

    /// Letters restricted to qubits [first, first + count), phase kept.
    PauliOperator slice(std::size_t first, std::size_t count) const {
        if (first + count > n_) {
            throw IndexError("Pauli slice out of range");
        }
        PauliOperator r(count);
        for (std::size_t q = 0; q < count; ++q) {
            r.set_x(q, x(first + q));
            r.set_z(q, z(first + q));
        }
        r.phase_ = phase_;
        return r;
    }

    /// Tensor product this (x) other.
    PauliOperator tensor(const PauliOperator &other) const {
        PauliOperator r(n_ + other.n_);
        for (std::size_t q = 0; q < n_; ++q) {
            r.set_x(q, x(q));
            r.set_z(q, z(q));
        }
        for (std::size_t q = 0; q < other.n_; ++q) {
            r.set_x(n_ + q, other.x(q));
            r.set_z(n_ + q, other.z(q));
        }
        r.phase_ = (phase_ + other.phase_) & 3;
        return r;
    }

    std::span<const std::uint64_t> x_words() const { return {x_.data(), num_words()}; }
    std::span<const std::uint64_t> z_words() const { return {z_.data(), num_words()}; }

    /// Number of Y letters.
    int y_count() const {
        int c = 0;
        for (std::size_t w = 0; w < kMaxWords; ++w) {
            c += std::popcount(x_[w] & z_[w]);
        }
        return c;
    }

    /// Symplectic bit 'col' in the order x_0..x_{n-1}, z_0..z_{n-1}.
    bool symplectic_bit(std::size_t col) const { return col < n_ ? x(col) : z(col - n_); }

    friend bool operator==(const PauliOperator &a, const PauliOperator &b) {
        return a.n_ == b.n_ && a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
    }

    /// Letters agree, phases may differ.
    friend bool same_letters(const PauliOperator &a, const PauliOperator &b) {
        return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
    }

    friend PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);
    friend bool commutes(const PauliOperator &p, const PauliOperator &q);

    std::size_t hash() const {
        std::size_t h = n_ * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(phase_);
        for (std::size_t w = 0; w < kMaxWords; ++w) {
            h ^= std::hash<std::uint64_t>{}(x_[w]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
            h ^= std::hash<std::uint64_t>{}(z_[w]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

   private:
    static void set_bit(std::array<std::uint64_t, kMaxWords> &words, std::size_t q, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (q % kWordBits);
        if (v) {
            words[q / kWordBits] |= mask;
        } else {
            words[q / kWordBits] &= ~mask;
        }
    }

    void check_index(std::size_t q) const {
        if (q >= n_) {
            throw IndexError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                             " qubits");
        }
    }

    std::size_t n_ = 0;
    int phase_ = 0;
    std::array<std::uint64_t, kMaxWords> x_{};
    std::array<std::uint64_t, kMaxWords> z_{};
};

inline std::ostream &operator<<(std::ostream &out, const PauliOperator &p) { return out << p.str(); }

/// The product p*q with exact phase.
///
/// With Y written as i*X*Z, i^e * prod Y-letters equals i^(e + #Y) * X^x Z^z.
/// In that form (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^(z1.x2) X^(x1+x2) Z^(z1+z2).
inline PauliOperator multiply(const PauliOperator &p, const PauliOperator &q) {
    if (p.n_ != q.n_) {
        throw DimensionError("multiply: " + std::to_string(p.n_) + " vs " + std::to_string(q.n_) +
                             " qubits");
    }
    PauliOperator r(p.n_);
    int exp = p.phase_ + q.phase_;
    for (std::size_t w = 0; w < PauliOperator::kMaxWords; ++w) {
        exp += std::popcount(p.x_[w] & p.z_[w]) + std::popcount(q.x_[w] & q.z_[w]);
        exp += 2 * std::popcount(p.z_[w] & q.x_[w]);
        r.x_[w] = p.x_[w] ^ q.x_[w];
        r.z_[w] = p.z_[w] ^ q.z_[w];
        exp -= std::popcount(r.x_[w] & r.z_[w]);
    }
    r.phase_ = ((exp % 4) + 4) % 4;
    return r;
}

inline PauliOperator operator*(const PauliOperator &p, const PauliOperator &q) { return multiply(p, q); }

/// True iff the symplectic inner product of p and q vanishes.
inline bool commutes(const PauliOperator &p, const PauliOperator &q) {
    if (p.n_ != q.n_) {
        throw DimensionError("commutes: " + std::to_string(p.n_) + " vs " + std::to_string(q.n_) +
                             " qubits");
    }
    int parity = 0;
    for (std::size_t w = 0; w < PauliOperator::kMaxWords; ++w) {
        parity ^= std::popcount((p.x_[w] & q.z_[w]) ^ (p.z_[w] & q.x_[w])) & 1;
    }
    return parity == 0;
}

/// The index-th Hermitian +1-signed Pauli in enumeration order. The index is
/// read as n base-4 digits, qubit 0 most significant, digit 0..3 = I,X,Y,Z.
inline PauliOperator pauli_from_index(std::size_t num_qubits, std::uint64_t index) {
    static constexpr std::array<char, 4> kDigits{'I', 'X', 'Y', 'Z'};
    PauliOperator p(num_qubits);
    for (std::size_t q = 0; q < num_qubits; ++q) {
        auto digit = (index >> (2 * (num_qubits - 1 - q))) & 3U;
        p.set_letter(q, kDigits[digit]);
    }
    return p;
}

/// Every Hermitian Pauli with sign +1 on n qubits, each exactly once, in the
/// order of pauli_from_index. -P is not listed; callers relabel a <-> 1-a.
class HermitianPaulis {
   public:
    class iterator {
       public:
        using iterator_category = std::input_iterator_tag;
        using value_type = PauliOperator;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = PauliOperator;

        iterator() = default;
        iterator(std::size_t n, std::uint64_t index) : n_(n), index_(index) {}

        PauliOperator operator*() const { return pauli_from_index(n_, index_); }
        std::uint64_t index() const { return index_; }
        iterator &operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            iterator old = *this;
            ++index_;
            return old;
        }
        friend bool operator==(const iterator &a, const iterator &b) { return a.index_ == b.index_; }

       private:
        std::size_t n_ = 0;
        std::uint64_t index_ = 0;
    };

    HermitianPaulis(std::size_t num_qubits, bool include_identity) : n_(num_qubits) {
        if (num_qubits < 1 || num_qubits > 31) {
            throw DimensionError("Pauli enumeration needs 1 <= n <= 31");
        }
        first_ = include_identity ? 0 : 1;
    }

    iterator begin() const { return {n_, first_}; }
    iterator end() const { return {n_, std::uint64_t{1} << (2 * n_)}; }
    std::size_t size() const { return static_cast<std::size_t>((std::uint64_t{1} << (2 * n_)) - first_); }

   private:
    std::size_t n_;
    std::uint64_t first_;
};

inline HermitianPaulis enumerate_hermitian_paulis(std::size_t num_qubits, bool include_identity) {
    return HermitianPaulis(num_qubits, include_identity);
}

/// Hermitian observable +P with a flag telling whether the caller asked for -P.
/// Measuring -P with outcome a is measuring +P with outcome 1-a.
struct NormalizedObservable {
    PauliOperator pauli;
    bool flip_outcome = false;
};

inline NormalizedObservable normalize_observable(const PauliOperator &p) {
    if (!p.is_hermitian()) {
        throw NonHermitian("observable " + p.str() + " is not Hermitian");
    }
    return {p.unsigned_part(), p.sign() < 0};
}

}  // namespace stabdisc

template <>
struct std::hash<stabdisc::PauliOperator> {
    std::size_t operator()(const stabdisc::PauliOperator &p) const { return p.hash(); }
};
