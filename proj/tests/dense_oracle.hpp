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

// Test-only dense reference built from explicit 2x2 matrices and Kronecker
// products. It shares nothing with the library's bit-twiddling paths.

#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using C = std::complex<double>;

inline Matrix letter_matrix(char c) {
    Matrix m(2, 2);
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

/// Text like "+XIZ", "-iY": sign, optional i, then letters (qubit 0 leftmost).
inline Matrix pauli(const std::string &text) {
    C phase = 1;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? -1.0 : 1.0;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase *= C(0, 1);
        ++pos;
    }
    Matrix m = Matrix::Identity(1, 1);
    for (; pos < text.size(); ++pos) {
        m = kron(m, letter_matrix(text[pos]));
    }
    return phase * m;
}

inline Matrix embed1(std::size_t n, std::size_t q, const Matrix &u) {
    Matrix m = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
        m = kron(m, k == q ? u : Matrix::Identity(2, 2));
    }
    return m;
}

inline Matrix hadamard() {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

inline Matrix phase_s() {
    Matrix s(2, 2);
    s << 1, 0, 0, C(0, 1);
    return s;
}

/// |1><1| on control times (u - 1) on target, plus identity.
inline Matrix controlled(std::size_t n, std::size_t control, std::size_t target, const Matrix &u) {
    Matrix p1(2, 2);
    p1 << 0, 0, 0, 1;
    Matrix id = Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
    Matrix proj = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == control) {
            proj = kron(proj, p1);
        } else if (k == target) {
            proj = kron(proj, u - Matrix::Identity(2, 2));
        } else {
            proj = kron(proj, Matrix::Identity(2, 2));
        }
    }
    return id + proj;
}

/// Single-qubit ket from '0', '1', '+', '-', 'r', 'l'.
inline Vector ket1(char c) {
    const double h = 1.0 / std::sqrt(2.0);
    Vector v(2);
    switch (c) {
        case '0':
            v << 1, 0;
            break;
        case '1':
            v << 0, 1;
            break;
        case '+':
            v << h, h;
            break;
        case '-':
            v << h, -h;
            break;
        case 'r':
            v << h, C(0, h);
            break;
        default:
            v << h, C(0, -h);
    }
    return v;
}

inline Vector kets(const std::string &s) {
    Matrix v = Matrix::Identity(1, 1);
    for (char c : s) {
        v = kron(v, ket1(c));
    }
    return v.col(0);
}

/// |<a|b>|^2.
inline double overlap2(const Vector &a, const Vector &b) { return std::norm(a.dot(b)); }

}  // namespace oracle
