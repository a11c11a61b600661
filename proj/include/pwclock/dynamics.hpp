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

// Polarization Hamiltonians, propagators and the two-photon product state.
// Units: hbar = 1, so every result depends on time only through omega * t.

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "pwclock/qstate.hpp"

namespace pwclock {

class ClockSpec {
  public:
    static constexpr double hbar = 1.0;

    explicit ClockSpec(double omega = 1.0) : omega_(omega) {
        if (!(omega > 0.0) || !std::isfinite(omega)) {
            throw UsageError("clock angular frequency must be positive and finite, got " + std::to_string(omega));
        }
    }

    double omega() const { return omega_; }
    double period() const { return 2.0 * std::numbers::pi / omega_; }
    /// Dimensionless phase omega * t.
    double phase(double t) const { return omega_ * t; }

  private:
    double omega_;
};

struct TimedState {
    double t;
    StateVector state;
};

/// hbar*omega * (i|H><V| - i|V><H|) in basis [H, V].
inline OperatorMatrix single_photon_hamiltonian(const ClockSpec &spec) {
    const double e = ClockSpec::hbar * spec.omega();
    return OperatorMatrix{{0.0, Complex(0.0, e)}, {Complex(0.0, -e), 0.0}};
}

/// H_c (x) 1_r + 1_c (x) H_r.
inline OperatorMatrix global_hamiltonian(const ClockSpec &spec) {
    const auto h = single_photon_hamiltonian(spec);
    const auto id = OperatorMatrix::identity(2);
    return tensor_product(h, id) + tensor_product(id, h);
}

namespace detail {

inline void require_hermitian(const OperatorMatrix &h) {
    const auto check = validate(h, Predicate::hermitian);
    if (!check.passed) {
        throw UsageError("propagator needs a Hermitian generator (violation " + std::to_string(check.violation) + ")");
    }
}

/// Returns c >= 0 when h*h == c*I to within roundoff, otherwise -1.
inline double scalar_square(const OperatorMatrix &h) {
    const auto sq = h * h;
    const double c = sq(0, 0).real();
    const auto resid = (sq - c * OperatorMatrix::identity(h.dim())).max_abs();
    const double scale = std::max(1.0, std::abs(c));
    return (c >= 0.0 && resid <= 1e-14 * scale) ? c : -1.0;
}

}  // namespace detail

/// exp(-i h t / hbar) for generators with h^2 = e^2 I:
/// cos(e t) I - i sin(e t)/e h.
inline OperatorMatrix propagator_closed_form(const OperatorMatrix &h, double t) {
    detail::require_hermitian(h);
    const double c = detail::scalar_square(h);
    if (c < 0.0) {
        throw UsageError("closed-form propagator requires h^2 proportional to the identity");
    }
    const double e = std::sqrt(c) / ClockSpec::hbar;
    auto u = std::cos(e * t) * OperatorMatrix::identity(h.dim());
    if (e > 0.0) {
        u += Complex(0.0, -std::sin(e * t) / (e * ClockSpec::hbar)) * h;
    }
    return u;
}

/// exp(-i h t / hbar) by scaling and squaring a Taylor series.
inline OperatorMatrix propagator_series(const OperatorMatrix &h, double t) {
    detail::require_hermitian(h);
    auto a = Complex(0.0, -t / ClockSpec::hbar) * h;
    int squarings = 0;
    const double n1 = a.norm1();
    if (n1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(n1 / 0.5)));
        a *= std::ldexp(1.0, -squarings);
    }

    const std::size_t n = h.dim();
    auto sum = OperatorMatrix::identity(n);
    auto term = OperatorMatrix::identity(n);
    for (int k = 1; k < 64; ++k) {
        term = term * a;
        term *= 1.0 / k;
        sum += term;
        if (term.max_abs() < 1e-16) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

/// exp(-i h t / hbar), closed form when available.
inline OperatorMatrix propagator(const OperatorMatrix &h, double t) {
    detail::require_hermitian(h);
    return detail::scalar_square(h) >= 0.0 ? propagator_closed_form(h, t) : propagator_series(h, t);
}

inline StateVector evolve(const OperatorMatrix &u, const StateVector &psi) { return StateVector(u * psi); }

/// ||h psi||_2; zero for states annihilated by the constraint.
inline double wd_residual(const OperatorMatrix &h, std::span<const Complex> psi) {
    return std::sqrt(squared_norm(h * psi));
}

/// Free evolution of a single photon to phase theta:
/// |H> -> cos θ|H> - sin θ|V>,  |V> -> sin θ|H> + cos θ|V>.
inline StateVector single_photon_state_at_phase(Polarization start, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (start == Polarization::H) {
        return StateVector{c, -s};
    }
    return StateVector{s, c};
}

/// (cos θ|H>_c - sin θ|V>_c) (x) (cos θ|V>_r + sin θ|H>_r) at θ = omega t.
inline StateVector product_state_at_phase(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return StateVector{s * c, c * c, -s * s, -s * c};
}

inline StateVector product_state_at(double t, const ClockSpec &spec) { return product_state_at_phase(spec.phase(t)); }

inline TimedState timed_product_state(double t, const ClockSpec &spec) { return {t, product_state_at(t, spec)}; }

}  // namespace pwclock
