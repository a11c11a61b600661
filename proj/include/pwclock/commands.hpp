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

// Dataset builders behind the command-line tool, plus CSV/JSON rendering.
// Floats are written with 17 significant digits via std::to_chars, so output
// is locale-independent and byte-reproducible.

#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pwclock/pwclock.hpp"

namespace pwclock::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
    double omega = 1.0;
    int panels = 4096;
    int grid_n = 41;
    double x_min = 0.0;
    double x_max = std::numbers::pi;
    int x_steps = 1024;
    std::string output_path = "-";
    OutputFormat format = OutputFormat::csv;

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega)) {
            throw UsageError("--omega must be positive");
        }
        (void)QuadratureSpec(panels);
        if (grid_n < 2) {
            throw UsageError("--grid-n must be at least 2");
        }
        if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
            throw UsageError("scan window needs x-min < x-max");
        }
        if (x_min < 0.0) {
            throw UsageError("--x-min must be nonnegative");
        }
        if (x_steps < 1) {
            throw UsageError("--x-steps must be positive");
        }
    }
};

using Cell = std::variant<double, bool, long long>;

struct Dataset {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Extra key/value results (e.g. the located maximum) kept out of the rows.
    std::vector<std::pair<std::string, double>> summary;
};

inline std::string format_double(double v) {
    if (v == 0.0) {
        v = 0.0;  // drop the sign of negative zero
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell &c) {
    if (const auto *d = std::get_if<double>(&c)) {
        return format_double(*d);
    }
    if (const auto *b = std::get_if<bool>(&c)) {
        return *b ? "true" : "false";
    }
    return std::to_string(std::get<long long>(c));
}

inline std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig &cfg) {
    return {{"omega", format_double(cfg.omega)},   {"panels", std::to_string(cfg.panels)},
            {"grid_n", std::to_string(cfg.grid_n)}, {"x_min", format_double(cfg.x_min)},
            {"x_max", format_double(cfg.x_max)},    {"x_steps", std::to_string(cfg.x_steps)}};
}

inline std::string render_csv(const Dataset &ds, const RunConfig &cfg) {
    std::string out = "# pwclock " + std::string(kVersion) + " command=" + ds.command;
    for (const auto &[k, v] : config_echo(cfg)) {
        out += " " + k + "=" + v;
    }
    out += '\n';
    for (std::size_t i = 0; i < ds.columns.size(); ++i) {
        out += (i ? "," : "") + ds.columns[i];
    }
    out += '\n';
    for (const auto &row : ds.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + format_cell(row[i]);
        }
        out += '\n';
    }
    if (!ds.summary.empty()) {
        out += "# summary";
        for (const auto &[k, v] : ds.summary) {
            out += " " + k + "=" + format_double(v);
        }
        out += '\n';
    }
    return out;
}

/// {"meta": {...}, "rows": [...], "summary": {...}}; numbers keep the CSV formatting.
inline std::string render_json(const Dataset &ds, const RunConfig &cfg) {
    auto quote = [](const std::string &s) { return nlohmann::json(s).dump(); };
    std::string out = "{\n  \"meta\": {\"tool\": \"pwclock\", \"version\": " + quote(kVersion) +
                      ", \"command\": " + quote(ds.command);
    for (const auto &[k, v] : config_echo(cfg)) {
        out += ", " + quote(k) + ": " + v;
    }
    out += "},\n  \"rows\": [";
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        out += r ? ",\n    {" : "\n    {";
        for (std::size_t i = 0; i < ds.columns.size(); ++i) {
            out += (i ? ", " : "") + quote(ds.columns[i]) + ": " + format_cell(ds.rows[r][i]);
        }
        out += "}";
    }
    out += ds.rows.empty() ? "]" : "\n  ]";
    if (!ds.summary.empty()) {
        out += ",\n  \"summary\": {";
        for (std::size_t i = 0; i < ds.summary.size(); ++i) {
            out += (i ? ", " : "") + quote(ds.summary[i].first) + ": " + format_double(ds.summary[i].second);
        }
        out += "}";
    }
    out += "\n}\n";
    return out;
}

inline std::string render(const Dataset &ds, const RunConfig &cfg) {
    return cfg.format == OutputFormat::json ? render_json(ds, cfg) : render_csv(ds, cfg);
}

inline constexpr double kDatasetTol = 1e-10;

namespace detail {

inline void require_close(double got, double want, const std::string &what) {
    if (!(std::abs(got - want) <= kDatasetTol)) {
        throw NumericalIntegrityError(what + ": computed " + format_double(got) + ", expected " + format_double(want));
    }
}

inline void require_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw NumericalIntegrityError(what + " = " + format_double(p) + " is not a probability");
    }
}

inline double grid_value(int i, int n) { return static_cast<double>(i) / static_cast<double>(n - 1); }

}  // namespace detail

/// Rows {x, C, violates}; C from the sequential-measurement engine, checked
/// against the closed form.
inline Dataset cmd_lgi_scan(const RunConfig &cfg) {
    cfg.validate();
    Dataset ds{"lgi-scan", {"x", "C", "violates"}, {}, {}};
    ds.rows.reserve(static_cast<std::size_t>(cfg.x_steps) + 1);
    const double span = cfg.x_max - cfg.x_min;
    for (int i = 0; i <= cfg.x_steps; ++i) {
        const double x = cfg.x_min + span * static_cast<double>(i) / static_cast<double>(cfg.x_steps);
        const double c = lgi_functional_engine(x);
        detail::require_close(c, lgi_functional(x), "LGI engine vs closed form at x=" + format_double(x));
        if (!(c >= -4.0 && c <= 2.0 * std::numbers::sqrt2 + kDatasetTol)) {
            throw NumericalIntegrityError("LGI value out of range at x=" + format_double(x));
        }
        ds.rows.push_back({x, c, violates_classical_bound(c)});
    }
    const auto best = lgi_maximize(cfg.x_min, cfg.x_max);
    ds.summary = {{"x_star", best.x}, {"C_star", best.value}};
    return ds;
}

/// Rows {lambda_c, lambda_r, P_stationary, P_timeavg, advantage} on a grid_n^2 grid.
inline Dataset cmd_cond_surface(const RunConfig &cfg) {
    cfg.validate();
    const ClockSpec spec(cfg.omega);
    const QuadratureSpec quad(cfg.panels);
    Dataset ds{"cond-surface", {"lambda_c", "lambda_r", "P_stationary", "P_timeavg", "advantage"}, {}, {}};
    for (int i = 0; i < cfg.grid_n; ++i) {
        for (int j = 0; j < cfg.grid_n; ++j) {
            const double lc = detail::grid_value(i, cfg.grid_n);
            const double lr = detail::grid_value(j, cfg.grid_n);
            ConditionalQuery q{StateKind::stationary, MeasurementKind::unsharp, SharpnessPair(lc, lr),
                               Formalism::density_matrix};
            const double ps = conditional_probability(q, spec, quad);
            q.state_kind = StateKind::time_dependent;
            const double pt = conditional_probability(q, spec, quad);
            detail::require_probability(ps, "P_stationary");
            detail::require_probability(pt, "P_timeavg");
            detail::require_close(ps, (1.0 + lc * lr) / 2.0, "stationary conditional");
            detail::require_close(pt, (2.0 + lc * lr) / 4.0, "time-averaged conditional");
            const double adv = ps - pt;
            if (adv < -kDatasetTol) {
                throw NumericalIntegrityError("negative entanglement advantage");
            }
            ds.rows.push_back({lc, lr, ps, pt, adv});
        }
    }
    return ds;
}

/// Rows {lambda, P_stationary, P_timeavg} along lambda_c = lambda_r.
inline Dataset cmd_cond_slice(const RunConfig &cfg) {
    cfg.validate();
    const ClockSpec spec(cfg.omega);
    const QuadratureSpec quad(cfg.panels);
    Dataset ds{"cond-slice", {"lambda", "P_stationary", "P_timeavg"}, {}, {}};
    for (int i = 0; i < cfg.grid_n; ++i) {
        const double l = detail::grid_value(i, cfg.grid_n);
        ConditionalQuery q{StateKind::stationary, MeasurementKind::unsharp, SharpnessPair(l, l),
                           Formalism::density_matrix};
        const double ps = conditional_probability(q, spec, quad);
        q.state_kind = StateKind::time_dependent;
        const double pt = conditional_probability(q, spec, quad);
        detail::require_close(ps, (1.0 + l * l) / 2.0, "stationary conditional");
        detail::require_close(pt, (2.0 + l * l) / 4.0, "time-averaged conditional");
        ds.rows.push_back({l, ps, pt});
    }
    return ds;
}

struct ReportCheck {
    std::string name;
    std::string value;
    bool passed;
};

struct Report {
    std::vector<ReportCheck> checks;
    bool all_passed() const {
        for (const auto &c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }
};

inline std::string fixed(double v, int digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

/// Headline values with pass/fail against their targets.
inline Report cmd_report(const RunConfig &cfg) {
    cfg.validate();
    const ClockSpec spec(cfg.omega);
    const QuadratureSpec quad(cfg.panels);
    Report rep;
    auto add = [&rep](std::string name, std::string value, bool ok) {
        rep.checks.push_back({std::move(name), std::move(value), ok});
    };

    const double wd = wd_residual(global_hamiltonian(spec), stationary_state(spec, quad));
    add("wd_residual", format_double(wd) + " (<= 1e-12)", wd <= 1e-12);

    ConditionalQuery q{StateKind::stationary, MeasurementKind::sharp, SharpnessPair::sharp(), Formalism::amplitude};
    const double ps_amp = conditional_probability(q, spec, quad);
    q.formalism = Formalism::density_matrix;
    const double ps_rho = conditional_probability(q, spec, quad);
    q.state_kind = StateKind::time_dependent;
    const double pt_rho = conditional_probability(q, spec, quad);
    q.formalism = Formalism::amplitude;
    const double pt_amp = conditional_probability(q, spec, quad);
    add("P_sharp_stationary", fixed(ps_rho, 12), std::abs(ps_rho - 1.0) <= 1e-12 && std::abs(ps_amp - 1.0) <= 1e-12);
    add("P_sharp_timeavg", fixed(pt_rho, 12),
        std::abs(pt_rho - 0.75) <= 1e-10 && std::abs(pt_amp - 0.75) <= 1e-10 && std::abs(pt_rho - pt_amp) <= 1e-12);

    const auto best = lgi_maximize(0.0, std::numbers::pi / 2.0);
    const double engine = lgi_functional_engine(best.x);
    add("C_max", fixed(best.value, 8),
        std::abs(best.value - 2.0 * std::numbers::sqrt2) <= 1e-10 &&
            std::abs(engine - 2.0 * std::numbers::sqrt2) <= 1e-10);
    add("x_star", fixed(best.x, 10), std::abs(best.x - std::numbers::pi / 8.0) <= 1e-8);
    add("lgi_violated", violates_classical_bound(best.value) ? "true" : "false", violates_classical_bound(best.value));

    const int expect_massless[] = {0, 2, 5};
    const int expect_massive[] = {2, 5, 9};
    for (int d = 3; d <= 5; ++d) {
        const int ml = massless_graviton_dof(SpacetimeDim(d));
        const int mv = massive_graviton_dof(SpacetimeDim(d));
        add("dof_massless(" + std::to_string(d) + ")", std::to_string(ml), ml == expect_massless[d - 3]);
        add("dof_massive(" + std::to_string(d) + ")", std::to_string(mv), mv == expect_massive[d - 3]);
    }
    const std::pair<int, const char *> spins[] = {{1, "1/2"}, {2, "1"}, {4, "2"}};
    for (const auto &[twice, label] : spins) {
        const int m = spin_multiplicity(Spin::from_twice(twice));
        add("multiplicity(j=" + std::string(label) + ")", std::to_string(m), m == twice + 1);
    }
    return rep;
}

inline std::string render_report(const Report &rep, const RunConfig &cfg) {
    if (cfg.format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["meta"] = {{"tool", "pwclock"}, {"version", kVersion}, {"command", "report"}};
        for (const auto &c : rep.checks) {
            j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"passed", c.passed}});
        }
        j["all_passed"] = rep.all_passed();
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# pwclock " << kVersion << " command=report omega=" << format_double(cfg.omega)
       << " panels=" << cfg.panels << "\n";
    for (const auto &c : rep.checks) {
        os << c.name << " = " << c.value << "  [" << (c.passed ? "ok" : "FAIL") << "]\n";
    }
    os << (rep.all_passed() ? "all checks passed\n" : "some checks FAILED\n");
    return os.str();
}

}  // namespace pwclock::cli
