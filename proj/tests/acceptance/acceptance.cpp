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

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "pwclock/commands.hpp"
#include "pwclock/pwclock.hpp"

using namespace pwclock;
using std::numbers::pi;

namespace {

const double kSqrt8 = 2.0 * std::numbers::sqrt2;

/// Collects named sub-checks for one criterion.
class Checks {
  public:
    void near(const std::string &what, double got, double want, double tol) {
        const double err = std::abs(got - want);
        if (!(err <= tol)) {
            fail(what + ": got " + cli::format_double(got) + ", want " + cli::format_double(want) + " (tol " +
                 cli::format_double(tol) + ")");
        }
        worst_ = std::max(worst_, err);
    }
    void expect(const std::string &what, bool ok) {
        if (!ok) {
            fail(what);
        }
    }
    bool passed() const { return failures_.empty(); }
    double worst() const { return worst_; }
    const std::vector<std::string> &failures() const { return failures_; }

  private:
    void fail(std::string msg) {
        if (failures_.size() < 5) {
            failures_.push_back(std::move(msg));
        }
    }
    std::vector<std::string> failures_;
    double worst_ = 0.0;
};

struct Criterion {
    int id;
    std::string title;
    std::function<void(Checks &)> body;
};

struct Process {
    int exit_code;
    std::string out;
};

Process run_cli(const std::string &args) {
    const std::string cmd = std::string(PWCLOCK_CLI_PATH) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, ""};
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string without_comments(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (!line.starts_with("#")) {
            out += line + "\n";
        }
    }
    return out;
}

double unsharp(StateKind st, double lc, double lr, Formalism f, const ClockSpec &spec) {
    return conditional_probability({st, MeasurementKind::unsharp, SharpnessPair(lc, lr), f}, spec);
}

void lgi_maximum(Checks &c) {
    const auto best = lgi_maximize(0.0, pi / 2.0);
    c.near("C*", best.value, kSqrt8, 1e-10);
    c.near("x*", best.x, pi / 8.0, 1e-8);
    c.near("engine C(x*)", lgi_functional_engine(best.x), kSqrt8, 1e-10);
    c.near("engine C(x*) init 2", lgi_functional_engine(best.x, InitialCondition::vertical), kSqrt8, 1e-10);
    c.near("reported 2.82843", best.value, 2.82843, 5e-6);
}

void lgi_curve(Checks &c) {
    for (int i = 0; i < 1000; ++i) {
        const double x = pi * i / 999.0;
        c.near("engine vs closed form at x=" + cli::format_double(x), lgi_functional_engine(x),
               3.0 * std::cos(2.0 * x) - std::cos(6.0 * x), 1e-12);
    }
    std::vector<std::string> not_above;
    for (int i = 1; i <= 100; ++i) {
        const double x = (pi / 4.0) * i / 101.0;
        const double value = lgi_functional_engine(x);
        if (!(value > 2.0)) {
            not_above.push_back("C > 2 at x=" + cli::format_double(x) + ": C = " + cli::format_double(value));
        }
    }
    if (!not_above.empty()) {
        c.expect(std::to_string(not_above.size()) + " of 100 sampled points in (0, pi/4) have C <= 2", false);
        for (const auto &msg : not_above) {
            c.expect(msg, false);
        }
    }
    c.near("C(0)", lgi_functional_engine(0.0), 2.0, 1e-12);
}

void wd_constraint(Checks &c) {
    for (double omega : {1.0, 3.7}) {
        const ClockSpec spec(omega);
        const auto psi = stationary_state(spec);
        c.near("||H psi_bar|| omega=" + cli::format_double(omega), wd_residual(global_hamiltonian(spec), psi), 0.0,
               1e-12);
        c.expect("time-averaged state is the singlet", equal_up_to_phase(psi, singlet_state()));
    }
}

void sharp_conditionals(Checks &c) {
    const ClockSpec spec(1.0);
    auto sharp = [&](StateKind st, Formalism f) {
        return conditional_probability({st, MeasurementKind::sharp, SharpnessPair::sharp(), f}, spec);
    };
    const double st_amp = sharp(StateKind::stationary, Formalism::amplitude);
    const double st_rho = sharp(StateKind::stationary, Formalism::density_matrix);
    const double td_amp = sharp(StateKind::time_dependent, Formalism::amplitude);
    const double td_rho = sharp(StateKind::time_dependent, Formalism::density_matrix);
    c.near("stationary, amplitude ratio", st_amp, 1.0, 1e-12);
    c.near("stationary, trace ratio", st_rho, 1.0, 1e-12);
    c.near("time-averaged, amplitude ratio", td_amp, 0.75, 1e-10);
    c.near("time-averaged, trace ratio", td_rho, 0.75, 1e-10);
    c.near("formalisms agree (stationary)", st_amp, st_rho, 1e-12);
    c.near("formalisms agree (time-averaged)", td_amp, td_rho, 1e-12);
}

void unsharp_conditionals(Checks &c) {
    const ClockSpec spec(1.0);
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double lc = i / 20.0;
            const double lr = j / 20.0;
            for (auto f : {Formalism::density_matrix, Formalism::amplitude}) {
                c.near("stationary", unsharp(StateKind::stationary, lc, lr, f, spec), (1 + lc * lr) / 2, 1e-10);
                c.near("time-averaged", unsharp(StateKind::time_dependent, lc, lr, f, spec), (2 + lc * lr) / 4, 1e-10);
            }
        }
    }
    c.near("stationary at (1,1)", unsharp(StateKind::stationary, 1, 1, Formalism::density_matrix, spec), 1.0, 1e-10);
    c.near("time-averaged at (1,1)", unsharp(StateKind::time_dependent, 1, 1, Formalism::density_matrix, spec), 0.75,
           1e-10);
}

void advantage(Checks &c) {
    const ClockSpec spec(1.0);
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double lc = i / 20.0;
            const double lr = j / 20.0;
            const double adv = entanglement_advantage(SharpnessPair(lc, lr), spec);
            c.near("advantage", adv, lc * lr / 4.0, 1e-10);
            c.expect("advantage nonnegative", adv >= 0.0);
            if (lc * lr == 0.0) {
                c.expect("advantage zero on boundary", adv == 0.0);
            } else {
                c.expect("advantage positive off boundary", adv > 0.0);
            }
        }
    }
}

void sequential_oracle(Checks &c) {
    std::mt19937_64 gen(20261015);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    const ClockSpec spec(1.3);
    const double w = spec.omega();
    for (int trial = 0; trial < 1000; ++trial) {
        double t1 = time(gen);
        double t2 = time(gen);
        if (t1 > t2) {
            std::swap(t1, t2);
        }
        if (t2 - t1 < 1e-9) {
            t2 = t1 + 1e-3;
        }
        const double c1 = std::cos(w * t1);
        const double c12 = std::cos(w * (t2 - t1));
        c.near("P_1HH", joint_two_time_probability(InitialCondition::horizontal, Outcome::H, t1, Outcome::H, t2, spec),
               c1 * c1 * c12 * c12, 1e-12);
        c.near("P_2VV", joint_two_time_probability(InitialCondition::vertical, Outcome::V, t1, Outcome::V, t2, spec),
               c1 * c1 * c12 * c12, 1e-12);
        for (auto init : {InitialCondition::horizontal, InitialCondition::vertical}) {
            c.near("C12", two_time_correlator(t1, t2, spec, init), std::cos(2.0 * w * (t2 - t1)), 1e-12);
        }
    }
}

void povm_structure(Checks &c) {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const SharpnessPair pair(i / 20.0, j / 20.0);
            OperatorMatrix sum(4);
            for (auto oc : kOutcomes) {
                for (auto orr : kOutcomes) {
                    const auto e = joint_effect(pair, oc, orr);
                    sum += e;
                    const auto eig = hermitian_eigenvalues(e);
                    c.expect("eigenvalues in [-1e-12, 1+1e-12]", eig.front() >= -1e-12 && eig.back() <= 1.0 + 1e-12);
                }
            }
            c.near("sum of effects - I", (sum - OperatorMatrix::identity(4)).max_abs(), 0.0, 1e-15);
        }
    }
}

void dof_table(Checks &c) {
    c.expect("massless(4) = 2", massless_graviton_dof(SpacetimeDim(4)) == 2);
    c.expect("massive(4) = 5", massive_graviton_dof(SpacetimeDim(4)) == 5);
    c.expect("multiplicity(2) = 5", spin_multiplicity(Spin::integer(2)) == 5);
    c.expect("multiplicity(1/2) = 2", spin_multiplicity(Spin::from_twice(1)) == 2);
}

void cli_integrity(Checks &c) {
    const auto rep = run_cli("report");
    c.expect("report exits 0:\n" + rep.out, rep.exit_code == 0);
    const auto rep2 = run_cli("report");
    c.expect("report byte-identical", rep.out == rep2.out);

    const auto dir = std::filesystem::temp_directory_path() / "pwclock_acceptance";
    std::filesystem::create_directories(dir);
    for (const std::string cmd : {"lgi-scan", "cond-surface", "cond-slice"}) {
        for (const std::string fmt : {"csv", "json"}) {
            const auto a = dir / (cmd + "_a." + fmt);
            const auto b = dir / (cmd + "_b." + fmt);
            c.expect(cmd + " run a", run_cli(cmd + " --format " + fmt + " --out " + a.string()).exit_code == 0);
            c.expect(cmd + " run b", run_cli(cmd + " --format " + fmt + " --out " + b.string()).exit_code == 0);
            c.expect(cmd + " " + fmt + " byte-identical", !slurp(a).empty() && slurp(a) == slurp(b));
        }
        const auto w1 = dir / (cmd + "_w1.csv");
        const auto w37 = dir / (cmd + "_w37.csv");
        c.expect(cmd + " omega=1", run_cli(cmd + " --omega 1 --out " + w1.string()).exit_code == 0);
        c.expect(cmd + " omega=3.7", run_cli(cmd + " --omega 3.7 --out " + w37.string()).exit_code == 0);
        c.expect(cmd + " dataset identical for omega 1 vs 3.7",
                 without_comments(slurp(w1)) == without_comments(slurp(w37)) && !without_comments(slurp(w1)).empty());
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "LGI maximum C* = 2 sqrt 2 at x* = pi/8 (optimizer and engine)", lgi_maximum},
        {2, "LGI curve: engine = 3cos2x - cos6x, C > 2 on (0, pi/4), C(0) = 2", lgi_curve},
        {3, "time-averaged state is annihilated by the global Hamiltonian", wd_constraint},
        {4, "sharp conditionals 1 and 3/4 in both formalisms", sharp_conditionals},
        {5, "unsharp conditionals (1+lc lr)/2 and (2+lc lr)/4 on 21x21 grid", unsharp_conditionals},
        {6, "entanglement advantage lc lr / 4, nonnegative, zero on boundary", advantage},
        {7, "sequential Born + Lueders engine vs closed forms", sequential_oracle},
        {8, "joint effects sum to I4 and are valid effects", povm_structure},
        {9, "degree-of-freedom and multiplicity table", dof_table},
        {10, "CLI report, byte determinism, omega independence", cli_integrity},
    };

    int failed = 0;
    for (const auto &crit : criteria) {
        Checks checks;
        try {
            crit.body(checks);
        } catch (const std::exception &e) {
            checks.expect(std::string("unexpected exception: ") + e.what(), false);
        }
        std::printf("[%s] AC%-2d %s (max abs err %.3g)\n", checks.passed() ? "PASS" : "FAIL", crit.id,
                    crit.title.c_str(), checks.worst());
        for (const auto &f : checks.failures()) {
            std::printf("       %s\n", f.c_str());
        }
        failed += checks.passed() ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
