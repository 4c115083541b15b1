// Copyright 2026 The lpdi Authors
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

#ifndef LPDI_ERRORS_HPP_
#define LPDI_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpdi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values (p < 1, t < 1, malformed words, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A constructor input violates the documented preconditions.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Not enough digits or crossings to answer within the requested horizon.
class HorizonError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public HorizonError {
 public:
  TruncationError(const std::string& what, std::size_t attained)
      : HorizonError(what + " (attained length " + std::to_string(attained) +
                     ")"),
        attained_(attained) {}
  std::size_t attained() const { return attained_; }

 private:
  std::size_t attained_;
};

// Enumeration bounds or integer ranges exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double attempted)
      : Error(what + " (attempted bound " + std::to_string(attempted) + ")"),
        attempted_(attempted) {}
  double attempted() const { return attempted_; }

 private:
  double attempted_;
};

// Two evaluations at different precisions disagree.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpdi

#endif  // LPDI_ERRORS_HPP_
