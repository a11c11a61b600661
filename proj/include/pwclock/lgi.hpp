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

// Sequential two-time measurements on the clock photon and the
// Leggett-Garg combination C = C12 + C23 + C34 - C14.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "pwclock/dynamics.hpp"
#include "pwclock/measurement.hpp"

namespace pwclock {

inline constexpr double kClassicalLgiBound = 2.0;

/// 1: clock starts in |H>; 2: clock starts in |V>.
enum class InitialCondition { horizontal = 1, vertical = 2 };

constexpr Polarization start_polarization(InitialCondition init) {
    return init == InitialCondition::horizontal ? Polarization::H : Polarization::V;
}

class LgiSchedule {
  public:
    LgiSchedule(const std::array<double, 4> &times, const ClockSpec &spec) : times_(times) {
        for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
            if (!(times_[k] < times_[k + 1])) {
                throw UsageError("measurement times must be strictly increasing");
            }
        }
        const double d = times_[1] - times_[0];
        equal_spacing_ = std::abs(times_[2] - times_[1] - d) <= 1e-12 * std::max(1.0, d) &&
                         std::abs(times_[3] - times_[2] - d) <= 1e-12 * std::max(1.0, d);
        if (equal_spacing_) {
            delta_t_ = d;
            x_ = spec.phase(d);
        }
    }

    /// t_k = t1 + (k-1) x / omega.
    static LgiSchedule equally_spaced(double x, const ClockSpec &spec, double t1 = 0.0) {
        if (!(x > 0.0)) {
            throw UsageError("equally spaced schedule needs x > 0");
        }
        const double dt = x / spec.omega();
        LgiSchedule s({t1, t1 + dt, t1 + 2.0 * dt, t1 + 3.0 * dt}, spec);
        s.equal_spacing_ = true;
        s.delta_t_ = dt;
        s.x_ = x;
        return s;
    }

    const std::array<double, 4> &times() const { return times_; }
    double time(std::size_t k) const { return times_.at(k); }
    bool equal_spacing() const { return equal_spacing_; }
    double delta_t() const { return delta_t_; }
    double x() const { return x_; }

    /// omega (t_j - t_i) for 0-based indices i < j; exact multiples of x when equally spaced.
    double phase_gap(std::size_t i, std::size_t j, const ClockSpec &spec) const {
        if (equal_spacing_) {
            return static_cast<double>(j - i) * x_;
        }
        return spec.phase(times_.at(j) - times_.at(i));
    }

  private:
    std::array<double, 4> times_;
    bool equal_spacing_ = false;
    double delta_t_ = 0.0;
    double x_ = 0.0;
};

namespace detail {

/// Prepare, evolve to phase0, measure o1, evolve by gap, measure o2.
/// Propagation uses the unit-frequency generator, i.e. time in units of 1/omega.
inline double sequential_probability(InitialCondition init, Outcome o1, double phase0, Outcome o2, double gap) {
    const auto h = single_photon_hamiltonian(ClockSpec(1.0));
    const auto first = evolve(propagator(h, phase0), basis_state(start_polarization(init)));
    const auto p1 = sharp_projector(o1);
    if (squared_norm(p1 * first) < 1e-14) {
        return 0.0;
    }
    const auto collapsed = luders_collapse(first, p1);
    const auto second = evolve(propagator(h, gap), collapsed.state);
    return collapsed.probability * born_probability(DensityMatrix::pure(second), sharp_projector(o2));
}

inline double correlator_from_phases(InitialCondition init, double phase0, double gap) {
    double c = 0.0;
    for (auto o1 : kOutcomes) {
        for (auto o2 : kOutcomes) {
            c += dichotomic_value(o1) * dichotomic_value(o2) * sequential_probability(init, o1, phase0, o2, gap);
        }
    }
    return c;
}

}  // namespace detail

/// Born probability of `outcome` after free evolution from the initial condition.
inline double single_time_probability(InitialCondition init, Outcome outcome, double t, const ClockSpec &spec) {
    if (t < 0.0) {
        throw UsageError("measurement time must be nonnegative");
    }
    const auto h = single_photon_hamiltonian(spec);
    const auto psi = evolve(propagator(h, t), basis_state(start_polarization(init)));
    return born_probability(DensityMatrix::pure(psi), sharp_projector(outcome));
}

inline double joint_two_time_probability(InitialCondition init, Outcome o1, double t1, Outcome o2, double t2,
                                         const ClockSpec &spec) {
    if (t1 < 0.0) {
        throw UsageError("first measurement time must be nonnegative");
    }
    if (!(t1 < t2)) {
        throw UsageError("two-time probability needs t1 < t2");
    }
    return detail::sequential_probability(init, o1, spec.phase(t1), o2, spec.phase(t2 - t1));
}

/// <Q(t1) Q(t2)> = sum over outcomes of o1 o2 P(o1, t1; o2, t2).
inline double two_time_correlator(double t1, double t2, const ClockSpec &spec,
                                  InitialCondition init = InitialCondition::horizontal) {
    if (t1 < 0.0) {
        throw UsageError("first measurement time must be nonnegative");
    }
    if (!(t1 < t2)) {
        throw UsageError("correlator needs t1 < t2");
    }
    return detail::correlator_from_phases(init, spec.phase(t1), spec.phase(t2 - t1));
}

/// Closed form of C under equal spacing x = omega * dt: 3 cos 2x - cos 6x.
inline double lgi_functional(double x) { return 3.0 * std::cos(2.0 * x) - std::cos(6.0 * x); }

/// C12 + C23 + C34 - C14 from the collapse-and-evolve engine.
inline double lgi_functional_engine(const LgiSchedule &schedule, const ClockSpec &spec,
                                    InitialCondition init = InitialCondition::horizontal) {
    auto corr = [&](std::size_t i, std::size_t j) {
        return detail::correlator_from_phases(init, spec.phase(schedule.time(i)), schedule.phase_gap(i, j, spec));
    };
    return corr(0, 1) + corr(1, 2) + corr(2, 3) - corr(0, 3);
}

/// Engine value at spacing x with t1 = 0; x = 0 is the coincident-time limit.
inline double lgi_functional_engine(double x, InitialCondition init = InitialCondition::horizontal) {
    if (!(x >= 0.0)) {
        throw UsageError("LGI spacing x must be nonnegative");
    }
    const double c = detail::correlator_from_phases(init, 0.0, x);
    return 3.0 * c - detail::correlator_from_phases(init, 0.0, 3.0 * x);
}

struct ScalarOptimum {
    double x;
    double value;
};

/// Global maximum on [lo, hi]: dense scan, then golden-section on the
/// bracket around the best sample until it is narrower than `x_tol`.
/// Ties in the scan go to the lowest x.
template <class F>
ScalarOptimum maximize_scalar(F &&f, double lo, double hi, std::size_t samples = 4096, double x_tol = 1e-10) {
    if (!(lo < hi)) {
        throw UsageError("maximization interval must satisfy lo < hi");
    }
    if (samples < 2) {
        samples = 2;
    }
    const double step = (hi - lo) / static_cast<double>(samples - 1);
    std::size_t best = 0;
    double best_value = f(lo);
    for (std::size_t k = 1; k < samples; ++k) {
        const double v = f(lo + step * static_cast<double>(k));
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }

    double a = best == 0 ? lo : lo + step * static_cast<double>(best - 1);
    double b = best + 1 >= samples ? hi : lo + step * static_cast<double>(best + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > x_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }

    ScalarOptimum out{0.5 * (a + b), 0.0};
    out.value = f(out.x);
    for (double edge : {lo, hi}) {
        const double v = f(edge);
        if (v > out.value) {
            out = {edge, v};
        }
    }
    return out;
}

inline ScalarOptimum lgi_maximize(double x_lo, double x_hi) {
    return maximize_scalar([](double x) { return lgi_functional(x); }, x_lo, x_hi);
}

/// True iff c exceeds the macrorealist bound of 2.
inline bool violates_classical_bound(double c) { return c > kClassicalLgiBound + kAlgebraicTol; }

}  // namespace pwclock
