// Copyright 2026 The pwclock Authors
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

namespace pwclock {

/// Caller violated a precondition (bad dimension, out-of-range parameter, ...).
class UsageError : public std::invalid_argument {
  public:
    explicit UsageError(const std::string &what) : std::invalid_argument(what) {}
};

/// A computed quantity broke an invariant it must satisfy by construction.
class NumericalIntegrityError : public std::runtime_error {
  public:
    explicit NumericalIntegrityError(const std::string &what) : std::runtime_error(what) {}
};

/// Conditioning event has (numerically) zero probability.
class DegenerateConditioningError : public NumericalIntegrityError {
  public:
    explicit DegenerateConditioningError(const std::string &what) : NumericalIntegrityError(what) {}
};

/// Lüders update requested for an outcome that cannot occur.
class NullOutcomeError : public std::runtime_error {
  public:
    explicit NullOutcomeError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace pwclock
