// Copyright 2026 The spinbath Authors
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

#ifndef SPINBATH_ERRORS_HPP
#define SPINBATH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinbath {

/// Base of every exception thrown by the library. The C API maps each
/// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range index, mismatched dimensions, malformed input value.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A coupling vector that is identically zero where a normalized collective
/// operator is required.
class DegenerateCouplingError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds a configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or incomplete configuration (missing J couplings, step size
/// too large, unreadable config file).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A state left the physical set (trace, hermiticity, positivity) beyond
/// tolerance. Never repaired silently.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// A fast path was handed an input that breaks its precondition, e.g. a
/// generator that does not conserve magnetization.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An output file could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinbath

#endif  // SPINBATH_ERRORS_HPP
