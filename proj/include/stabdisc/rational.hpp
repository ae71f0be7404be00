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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "stabdisc/errors.hpp"

namespace stabdisc {

/// Exact probabilities and weights. Every value the search produces has a
/// small denominator (priors times powers of two), so 64 bits is plenty.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational &r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational &r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "3", "-1/6" or "1/2".
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) {
            throw ParseError("empty integer in rational '" + std::string(text) + "'");
        }
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(s), &pos);
        } catch (const std::exception &) {
            throw ParseError("bad rational '" + std::string(text) + "'");
        }
        if (pos != s.size()) {
            throw ParseError("bad rational '" + std::string(text) + "'");
        }
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

/// 2^-k as an exact rational.
inline Rational dyadic(unsigned k) {
    if (k > 62) {
        throw DomainError("dyadic exponent too large");
    }
    return Rational(1, std::int64_t{1} << k);
}

}  // namespace stabdisc
