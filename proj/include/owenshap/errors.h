/*
 * Copyright 2026 The OwenShap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OWENSHAP_ERRORS_H_
#define OWENSHAP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace owenshap {

// Base class of every error raised by the library. The CLI maps subclasses to
// process exit codes: BudgetError -> 3, everything else -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector lengths or model shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Argument outside its mathematical domain (e.g. a probability not in [0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed model or dataset content.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A forward pass produced a NaN or infinity.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Sampling budget is invalid, or an exact computation exceeds its cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace owenshap

#endif  // OWENSHAP_ERRORS_H_
