// Copyright 2026 The pfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pfsim {

// Exception hierarchy. Every error raised by the library derives from Error so
// callers (the CLI in particular) can map families onto exit codes.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Operand shapes do not fit the operation (non-square, mismatched dims).
class ShapeError : public Error {
   public:
    using Error::Error;
};

// A requested dimension exceeds Limits::max_dimension.
class SizeError : public Error {
   public:
    using Error::Error;
};

// Bad argument value such as a mode index outside {1, 2}.
class ArgumentError : public Error {
   public:
    using Error::Error;
};

// A numerical precondition or postcondition was violated (non-Hermitian input,
// norm drift, missing qubit factor where one is required).
class ContractError : public Error {
   public:
    using Error::Error;
};

// Physical parameters outside their domain (g = 0, negative frequency).
class InvalidParameters : public Error {
   public:
    using Error::Error;
};

// A verification identity failed its tolerance.
class VerificationFailure : public Error {
   public:
    using Error::Error;
};

// Malformed experiment configuration.
class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace pfsim
