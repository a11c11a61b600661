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

// pwclock: reproduce the clock-photon LGI and conditional-probability values
// and emit figure-ready datasets.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 numerical-integrity failure.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pwclock/commands.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitIntegrity = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string &text, const std::string &path) {
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace

int main(int argc, char **argv) {
    using namespace pwclock;
    using namespace pwclock::cli;

    CLI::App app{"Clock-photon Leggett-Garg and conditional-probability calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    RunConfig cfg;
    std::string format = "csv";
    app.add_option("--omega", cfg.omega, "clock angular frequency (hbar = 1)")->capture_default_str();
    app.add_option("--panels", cfg.panels, "Simpson panels per period (even)")->capture_default_str();
    app.add_option("--grid-n", cfg.grid_n, "sharpness grid points per axis")->capture_default_str();
    app.add_option("--x-min", cfg.x_min, "LGI scan start (x = omega * dt)")->capture_default_str();
    app.add_option("--x-max", cfg.x_max, "LGI scan end")->capture_default_str();
    app.add_option("--x-steps", cfg.x_steps, "LGI scan intervals (rows = steps + 1)")->capture_default_str();
    app.add_option("--out", cfg.output_path, "output file, '-' for stdout")->capture_default_str();
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    std::map<std::string, std::function<int()>> actions;

    app.add_subcommand("lgi-scan", "C(x) over the scan window");
    app.add_subcommand("cond-surface", "conditional probabilities over the (lambda_c, lambda_r) grid");
    app.add_subcommand("cond-slice", "conditional probabilities along lambda_c = lambda_r");
    app.add_subcommand("report", "headline values with pass/fail checks");
    auto *dof = app.add_subcommand("dof", "graviton degree-of-freedom counts");
    app.add_subcommand("wd-check", "global Hamiltonian residual of the time-averaged state");

    int dim = 4;
    dof->add_option("--dim", dim, "spacetime dimension D >= 3")->required();

    actions["lgi-scan"] = [&] {
        emit(render(cmd_lgi_scan(cfg), cfg), cfg.output_path);
        return EXIT_SUCCESS;
    };
    actions["cond-surface"] = [&] {
        emit(render(cmd_cond_surface(cfg), cfg), cfg.output_path);
        return EXIT_SUCCESS;
    };
    actions["cond-slice"] = [&] {
        emit(render(cmd_cond_slice(cfg), cfg), cfg.output_path);
        return EXIT_SUCCESS;
    };
    actions["report"] = [&] {
        const auto rep = cmd_report(cfg);
        emit(render_report(rep, cfg), cfg.output_path);
        if (!rep.all_passed()) {
            for (const auto &c : rep.checks) {
                if (!c.passed) {
                    std::cerr << "check failed: " << c.name << " = " << c.value << "\n";
                }
            }
            return kExitIntegrity;
        }
        return EXIT_SUCCESS;
    };
    actions["dof"] = [&] {
        const SpacetimeDim d(dim);
        std::string text = "dof_massless(" + std::to_string(dim) + ") = " + std::to_string(massless_graviton_dof(d)) +
                           "\ndof_massive(" + std::to_string(dim) + ") = " + std::to_string(massive_graviton_dof(d)) +
                           "\n";
        emit(text, cfg.output_path);
        return EXIT_SUCCESS;
    };
    actions["wd-check"] = [&] {
        const ClockSpec spec(cfg.omega);
        const auto h = global_hamiltonian(spec);
        const double stationary = wd_residual(h, stationary_state(spec, QuadratureSpec(cfg.panels)));
        const double product = wd_residual(h, basis_state(Polarization::H, Polarization::V));
        emit("wd_residual(stationary) = " + format_double(stationary) + "\nwd_residual(HV) = " +
                 format_double(product) + "\n",
             cfg.output_path);
        if (stationary > 1e-12) {
            std::cerr << "stationary state is not annihilated by the global Hamiltonian\n";
            return kExitIntegrity;
        }
        return EXIT_SUCCESS;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    try {
        cfg.validate();
        for (auto *sub : app.get_subcommands()) {
            return actions.at(sub->get_name())();
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const NumericalIntegrityError &e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const NullOutcomeError &e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kExitIntegrity;
    }
    return kExitUsage;
}
