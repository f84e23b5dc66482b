// Copyright 2026 The stabchan Authors
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

#ifndef STABCHAN_ERROR_HPP_
#define STABCHAN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stabchan {

// Base of everything the library throws. The CLI maps the subclasses onto
// exit codes: InvalidInput -> 2, NumericalFailure -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something that violates a documented precondition
// (wrong dimensions, non-Hermitian input, malformed file, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Input state outside the domain <v_max|rho|v_max> <= lambda_max.
class DomainViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Channel does not have the structure of the trace-preserving family.
class NotInFamily : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace stabchan

#endif  // STABCHAN_ERROR_HPP_
