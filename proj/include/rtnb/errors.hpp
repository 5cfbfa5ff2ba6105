// Copyright 2026 The rtnb Authors
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

namespace rtnb {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A channel whose Choi matrix has an eigenvalue below the CP tolerance.
class NotCompletelyPositive : public Error {
 public:
  using Error::Error;
};

/// Raised when a state carries non-negligible population in the top Fock
/// levels of the working truncation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A primitive state without support on one of the two codeword sublattices.
class DegeneratePrimitive : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Wigner grid does not cover the support of the state.
class GridTooSmall : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

}  // namespace rtnb
