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

#include <stdexcept>
#include <string>

namespace stabdisc {

/// Base class of every error thrown by the library.
struct Error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct NonHermitian : Error {
    using Error::Error;
};

struct NonCommuting : Error {
    using Error::Error;
};

struct DependentGenerators : Error {
    using Error::Error;
};

/// A forced measurement outcome that has probability zero.
struct ImpossibleOutcome : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NotOrthogonal : Error {
    using Error::Error;
};

struct NotABasis : Error {
    using Error::Error;
};

}  // namespace stabdisc
