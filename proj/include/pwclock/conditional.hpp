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

// Conditional probabilities P(V_r | H_c) for the stationary (entangled)
// state and for the time-dependent product state averaged over one period.
//
// Averages are taken over the dimensionless phase theta = omega t on
// [0, 2 pi], which is one clock period for any omega.

#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "pwclock/dynamics.hpp"
#include "pwclock/measurement.hpp"

namespace pwclock {

class QuadratureSpec {
  public:
    explicit QuadratureSpec(int panels = 4096) : panels_(panels) {
        if (panels <= 0 || panels % 2 != 0) {
            throw UsageError("Simpson quadrature needs a positive even panel count, got " + std::to_string(panels));
        }
    }
    int panels() const { return panels_; }

  private:
    int panels_;
};

namespace detail {

/// Composite Simpson average from node values node(k), k = 0..n.
template <class Node>
auto simpson_average(Node &&node, int n) {
    const double h = 2.0 * std::numbers::pi / n;
    auto ends = node(0) + node(n);
    using T = decltype(ends);
    // Kahan-compensated running sums; only needs + and - on T.
    auto accumulate = [&](int first) {
        T sum{};
        T carry{};
        for (int k = first; k < n; k += 2) {
            const T y = node(k) - carry;
            const T t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        }
        return sum;
    };
    const T odd = accumulate(1);
    const T even = accumulate(2);
    return (ends + 4.0 * odd + 2.0 * even) * (h / 3.0) / (2.0 * std::numbers::pi);
}

}  // namespace detail

/// (1/2pi) * integral of g over [0, 2pi], composite Simpson.
template <class G>
auto phase_average(G &&g, const QuadratureSpec &quad) {
    const int n = quad.panels();
    const double h = 2.0 * std::numbers::pi / n;
    return detail::simpson_average([&](int k) { return g(h * static_cast<double>(k)); }, n);
}

/// (omega/2pi) * integral of f(t) over one period [0, 2pi/omega].
template <class F>
double period_average(F &&f, const ClockSpec &spec, const QuadratureSpec &quad = QuadratureSpec()) {
    return phase_average([&](double theta) -> double { return f(theta / spec.omega()); }, quad);
}

namespace detail {

struct QuadratureNode {
    StateVector psi;
    DensityMatrix rho;
};

/// Product state and its projector at every quadrature node; built once per
/// panel count and thread.
inline const std::vector<QuadratureNode> &product_state_nodes(const QuadratureSpec &quad) {
    thread_local std::map<int, std::vector<QuadratureNode>> cache;
    const int n = quad.panels();
    auto it = cache.find(n);
    if (it == cache.end()) {
        const double h = 2.0 * std::numbers::pi / n;
        std::vector<QuadratureNode> nodes;
        nodes.reserve(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            auto psi = product_state_at_phase(h * static_cast<double>(k));
            auto rho = DensityMatrix::pure(psi);
            nodes.push_back({std::move(psi), std::move(rho)});
        }
        it = cache.emplace(n, std::move(nodes)).first;
    }
    return it->second;
}

}  // namespace detail

/// Componentwise period average of the product-state amplitudes, normalized,
/// with the global sign fixed so the HV amplitude is real positive.
inline StateVector stationary_state(const ClockSpec &spec, const QuadratureSpec &quad = QuadratureSpec()) {
    (void)spec;
    const auto &nodes = detail::product_state_nodes(quad);
    Amplitudes avg(4);
    for (std::size_t i = 0; i < avg.size(); ++i) {
        auto component = [&](int k) { return nodes[static_cast<std::size_t>(k)].psi[i]; };
        avg[i] = detail::simpson_average(component, quad.panels());
    }
    const double n2 = squared_norm(avg);
    if (!(n2 > 1e-28)) {
        throw NumericalIntegrityError("time-averaged state has zero norm");
    }
    const Complex hv = avg[1];
    if (std::abs(hv) > 0.0) {
        const Complex phase = std::conj(hv) / std::abs(hv);
        for (auto &z : avg) {
            z *= phase;
        }
    }
    return StateVector::normalized(std::move(avg));
}

enum class StateKind { stationary, time_dependent };
enum class MeasurementKind { sharp, unsharp };
enum class Formalism { amplitude, density_matrix };

struct ConditionalQuery {
    StateKind state_kind = StateKind::stationary;
    MeasurementKind measurement_kind = MeasurementKind::sharp;
    SharpnessPair sharpness = SharpnessPair::sharp();
    Formalism formalism = Formalism::density_matrix;

    SharpnessPair effective_sharpness() const {
        return measurement_kind == MeasurementKind::sharp ? SharpnessPair::sharp() : sharpness;
    }
};

namespace detail {

/// Joint (numerator) and clock-only (denominator) weights for one state.
struct ConditionalWeights {
    double joint = 0.0;
    double clock = 0.0;

    ConditionalWeights &operator+=(const ConditionalWeights &o) {
        joint += o.joint;
        clock += o.clock;
        return *this;
    }
    friend ConditionalWeights operator+(ConditionalWeights a, const ConditionalWeights &b) { return a += b; }
    friend ConditionalWeights operator-(ConditionalWeights a, const ConditionalWeights &b) {
        a.joint -= b.joint;
        a.clock -= b.clock;
        return a;
    }
    friend ConditionalWeights operator*(double s, ConditionalWeights a) {
        a.joint *= s;
        a.clock *= s;
        return a;
    }
    friend ConditionalWeights operator*(ConditionalWeights a, double s) { return s * a; }
    friend ConditionalWeights operator/(ConditionalWeights a, double s) {
        a.joint /= s;
        a.clock /= s;
        return a;
    }
};

struct ConditionalEffects {
    OperatorMatrix joint;
    OperatorMatrix clock;
};

inline ConditionalEffects conditional_effects(const SharpnessPair &pair) {
    ConditionalEffects e{joint_effect(pair, Outcome::H, Outcome::V), clock_effect(pair.clock(), Outcome::H)};
    if (!is_effect(e.joint) || !is_effect(e.clock)) {
        throw NumericalIntegrityError("conditional effects failed validation");
    }
    return e;
}

/// Sharp amplitude form: |<HV|psi>|^2 over ||<H|_c psi>||^2.
inline ConditionalWeights sharp_amplitude_weights(const StateVector &psi) {
    const auto hv = inner_product(basis_state(Polarization::H, Polarization::V).amplitudes(), psi.amplitudes());
    return {std::norm(hv), squared_norm(project_clock(psi, Polarization::H))};
}

/// Amplitude form with effects: <psi|F|psi>.
inline ConditionalWeights expectation_weights(const StateVector &psi, const ConditionalEffects &e) {
    return {checked_probability(expectation(psi, e.joint)), checked_probability(expectation(psi, e.clock))};
}

/// Density-matrix form: Tr[F rho].
inline ConditionalWeights trace_weights(const DensityMatrix &rho, const ConditionalEffects &e) {
    return {checked_probability(trace_of_product(e.joint, rho)), checked_probability(trace_of_product(e.clock, rho))};
}

inline ConditionalWeights weights_for(const StateVector &psi, const DensityMatrix &rho, const ConditionalQuery &q,
                                      const ConditionalEffects &e) {
    if (q.formalism == Formalism::density_matrix) {
        return trace_weights(rho, e);
    }
    if (q.measurement_kind == MeasurementKind::sharp) {
        return sharp_amplitude_weights(psi);
    }
    return expectation_weights(psi, e);
}

}  // namespace detail

/// P(|V>_r given |H>_c) for the queried state, measurement and formalism.
/// Time-dependent numerator and denominator are period-averaged separately.
inline double conditional_probability(const ConditionalQuery &query, const ClockSpec &spec,
                                      const QuadratureSpec &quad = QuadratureSpec()) {
    const auto effects = detail::conditional_effects(query.effective_sharpness());
    detail::ConditionalWeights w;
    if (query.state_kind == StateKind::stationary) {
        const auto psi = stationary_state(spec, quad);
        w = detail::weights_for(psi, DensityMatrix::pure(psi), query, effects);
    } else {
        const auto &nodes = detail::product_state_nodes(quad);
        w = detail::simpson_average(
            [&](int k) {
                const auto &node = nodes[static_cast<std::size_t>(k)];
                return detail::weights_for(node.psi, node.rho, query, effects);
            },
            quad.panels());
    }
    if (!(w.clock >= 1e-14)) {
        throw DegenerateConditioningError("conditioning probability " + std::to_string(w.clock) + " is zero");
    }
    return detail::checked_probability(w.joint / w.clock);
}

/// Stationary minus time-averaged unsharp conditional probability.
inline double entanglement_advantage(const SharpnessPair &pair, const ClockSpec &spec,
                                     const QuadratureSpec &quad = QuadratureSpec()) {
    ConditionalQuery q{StateKind::stationary, MeasurementKind::unsharp, pair, Formalism::density_matrix};
    const double stationary = conditional_probability(q, spec, quad);
    q.state_kind = StateKind::time_dependent;
    return stationary - conditional_probability(q, spec, quad);
}

}  // namespace pwclock
