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

// Graviton degree-of-freedom counts and spin multiplicities.

#pragma once

#include <string>

#include "pwclock/errors.hpp"

namespace pwclock {

class SpacetimeDim {
  public:
    explicit SpacetimeDim(int d) : d_(d) {
        if (d < 3) {
            throw UsageError("spacetime dimension must be at least 3, got " + std::to_string(d));
        }
    }
    int value() const { return d_; }

  private:
    int d_;
};

/// Spin j stored as the integer 2j.
class Spin {
  public:
    static Spin from_twice(int twice_j) {
        if (twice_j < 0) {
            throw UsageError("spin must be nonnegative");
        }
        return Spin(twice_j);
    }
    static Spin integer(int j) { return from_twice(2 * j); }

    int twice_j() const { return twice_j_; }
    double j() const { return 0.5 * twice_j_; }

  private:
    explicit Spin(int twice_j) : twice_j_(twice_j) {}
    int twice_j_;
};

/// D(D-3)/2
inline int massless_graviton_dof(SpacetimeDim dim) {
    const int d = dim.value();
    return d * (d - 3) / 2;
}

/// D(D-1)/2 - 1
inline int massive_graviton_dof(SpacetimeDim dim) {
    const int d = dim.value();
    return d * (d - 1) / 2 - 1;
}

/// 2j + 1
inline int spin_multiplicity(Spin s) { return s.twice_j() + 1; }

}  // namespace pwclock
