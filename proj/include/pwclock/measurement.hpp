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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "pwclock/qstate.hpp"

namespace pwclock {

/// Measurement outcome of the polarization observable: +1 for H, -1 for V.
using Outcome = Polarization;

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::H, Outcome::V};

inline double check_sharpness(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw UsageError("sharpness must lie in [0, 1], got " + std::to_string(lambda));
    }
    return lambda;
}

/// Sharpness of the clock and system polarization measurements.
class SharpnessPair {
  public:
    SharpnessPair(double lambda_c, double lambda_r)
        : lambda_c_(check_sharpness(lambda_c)), lambda_r_(check_sharpness(lambda_r)) {}

    static SharpnessPair sharp() { return {1.0, 1.0}; }

    double clock() const { return lambda_c_; }
    double system() const { return lambda_r_; }

  private:
    double lambda_c_;
    double lambda_r_;
};

/// Q = |H><H| - |V><V|.
inline OperatorMatrix dichotomic_observable() { return OperatorMatrix::diagonal({1.0, -1.0}); }

/// Q acting on one photon of the pair, identity on the other.
inline OperatorMatrix dichotomic_observable(Subsystem which) {
    const auto q = dichotomic_observable();
    const auto id = OperatorMatrix::identity(2);
    return which == Subsystem::clock ? tensor_product(q, id) : tensor_product(id, q);
}

/// F = (I + s*lambda*Q)/2 for outcome value s.
inline OperatorMatrix unsharp_effect(double lambda, Outcome outcome) {
    check_sharpness(lambda);
    // The small entry is formed as 1 - large, which is exact for large in
    // [1/2, 1], so F+ + F- == I holds bit for bit.
    const double large = 0.5 * (1.0 + lambda);
    const double small = 1.0 - large;
    return outcome == Outcome::H ? OperatorMatrix::diagonal({large, small}) : OperatorMatrix::diagonal({small, large});
}

/// (F+, F-); lambda = 1 gives the projectors (I +- Q)/2.
inline std::pair<OperatorMatrix, OperatorMatrix> unsharp_effects(double lambda) {
    return {unsharp_effect(lambda, Outcome::H), unsharp_effect(lambda, Outcome::V)};
}

/// Rank-one projector onto a single-photon basis state.
inline OperatorMatrix sharp_projector(Outcome outcome) { return unsharp_effect(1.0, outcome); }

/// 1/4 (I + s_c λ_c Q_c) (x) (I + s_r λ_r Q_r), diagonal in [HH, HV, VH, VV].
inline OperatorMatrix joint_effect(const SharpnessPair &pair, Outcome clock, Outcome system) {
    return tensor_product(unsharp_effect(pair.clock(), clock), unsharp_effect(pair.system(), system));
}

/// Effect for the clock outcome alone, system unobserved.
inline OperatorMatrix clock_effect(double lambda_c, Outcome clock) {
    return tensor_product(unsharp_effect(lambda_c, clock), OperatorMatrix::identity(2));
}

namespace detail {

/// Tr[effect rho] checked for reality and range; overshoot up to tol is clamped.
inline double checked_probability(Complex value) {
    if (std::abs(value.imag()) > kAlgebraicTol) {
        throw NumericalIntegrityError("Born probability has imaginary part " + std::to_string(value.imag()));
    }
    const double p = value.real();
    if (p < -kAlgebraicTol || p > 1.0 + kAlgebraicTol || !std::isfinite(p)) {
        throw NumericalIntegrityError("Born probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace detail

inline double born_probability(const DensityMatrix &rho, const OperatorMatrix &effect) {
    if (rho.dim() != effect.dim()) {
        throw UsageError("effect and density matrix dimensions differ");
    }
    const auto check = validate(effect, Predicate::effect);
    if (!check.passed) {
        throw UsageError("operator is not an effect (violation " + std::to_string(check.violation) + ")");
    }
    return detail::checked_probability(trace_of_product(effect, rho));
}

struct CollapseResult {
    StateVector state;
    double probability;
};

/// Lüders update psi -> P psi / ||P psi|| for a sharp projector.
inline CollapseResult luders_collapse(const StateVector &state, const OperatorMatrix &projector) {
    if (!is_hermitian(projector) || (projector * projector - projector).max_abs() > kAlgebraicTol) {
        throw UsageError("Lüders collapse needs an idempotent Hermitian projector");
    }
    auto projected = projector * state;
    const double p = squared_norm(projected);
    if (p < 1e-14) {
        throw NullOutcomeError("collapse onto an outcome of probability " + std::to_string(p));
    }
    return {StateVector::normalized(std::move(projected)), p};
}

}  // namespace pwclock
