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

#include <cstdint>
#include <random>

#include "gtest/gtest.h"
#include "pwclock/qstate.hpp"

namespace pwclock::testing {

inline std::mt19937_64 &rng() {
    static std::mt19937_64 gen(0x5eed1234abcdULL);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Complex random_complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

inline Amplitudes random_vector(std::size_t n) {
    Amplitudes v(n);
    for (auto &z : v) {
        z = random_complex();
    }
    return v;
}

inline StateVector random_state(std::size_t n) { return StateVector::normalized(random_vector(n)); }

inline OperatorMatrix random_matrix(std::size_t n) {
    OperatorMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            m(r, c) = random_complex();
        }
    }
    return m;
}

inline OperatorMatrix random_hermitian(std::size_t n) {
    const auto a = random_matrix(n);
    return 0.5 * (a + a.adjoint());
}

/// Mixed state sum_k w_k |psi_k><psi_k| with random weights.
inline DensityMatrix random_density(std::size_t n, int terms = 3) {
    OperatorMatrix acc(n);
    double total = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double w = uniform(0.1, 1.0);
        total += w;
        const auto psi = random_state(n);
        acc += w * outer_product(psi.amplitudes(), psi.amplitudes());
    }
    acc *= 1.0 / total;
    return DensityMatrix(acc);
}

inline double max_diff(const OperatorMatrix &a, const OperatorMatrix &b) { return (a - b).max_abs(); }

inline double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace pwclock::testing
