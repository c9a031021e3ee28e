// Copyright 2026 The Fatou Authors
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

#ifndef FATOU_ERROR_HPP
#define FATOU_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fatou {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-side precondition was violated (bad order, bad parameter, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation would have produced NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A map evaluation left the representable range. Orbits may legitimately
/// escape; iteration code treats this as data and never lets it propagate.
class EscapeError : public Error {
 public:
  using Error::Error;
};

/// A small divisor vanished (or fell below the representable floor).
class ZeroDivisorError : public Error {
 public:
  using Error::Error;
  ZeroDivisorError(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_ = -1;
};

/// An iterative procedure did not meet its stopping criterion.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fatou

#endif  // FATOU_ERROR_HPP
