/*
 Copyright 2026 The Bandgap Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "bandgap/figures.hpp"
#include "bandgap/moment2.hpp"
#include "bandgap/potential.hpp"
#include "bandgap/varopt.hpp"
#include "bandgap/verification.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct RunConfig {
    std::string command;
    std::optional<double> eta;
    std::optional<double> alpha;
    std::optional<double> k;
    std::optional<double> v0;
    double period = bandgap::kDefaultPeriod;
    std::size_t n = 512;
    std::optional<std::size_t> nBasis;
    std::uint64_t seed = 1;
    std::string out;
    double kmax = 0.95;
    std::size_t points = 0;
    std::string mode = "box";
    std::optional<double> v1;
    std::optional<double> v2;
    std::string trace;
    int maxIter = 200;
    std::vector<int> criteria;
};

void emit(bandgap::CsvTable const& t, std::string const& path)
{
    if (path.empty() || path == "-") {
        t.write(std::cout);
    } else {
        t.write_file(path);
    }
}

int run_fig(RunConfig const& c)
{
    using namespace bandgap;
    if (c.command == "fig1") {
        Fig1Config f;
        f.eta = c.eta.value_or(5.0);
        f.period = c.period;
        if (c.points) {
            f.count = c.points;
        }
        emit(fig1_table(f), c.out);
    } else if (c.command == "fig2") {
        Fig2Config f;
        f.eta = c.eta.value_or(5.0);
        f.alpha = c.alpha;
        f.v0 = c.v0.value_or(1.5);
        f.period = c.period;
        f.gridN = c.points ? c.points : 256;
        emit(fig2_table(f), c.out);
    } else if (c.command == "fig6") {
        Fig6Config f;
        f.kmax = c.kmax;
        f.period = c.period;
        f.n = c.n;
        f.nBasis = c.nBasis.value_or(64);
        if (c.points) {
            f.count = c.points;
        }
        emit(fig6_table(f), c.out);
    } else {
        SweepConfig s;
        s.period = c.period;
        s.n = c.n;
        s.nBasis = c.nBasis.value_or(64);
        if (c.points) {
            s.count = c.points;
        }
        if (c.v0) {
            s.v0ScaledMax = *c.v0 * c.period * c.period / 4.0;
        }
        emit(c.command == "fig3" ? fig3_table(s) : c.command == "fig4" ? fig4_table(s) : fig5_table(s), c.out);
    }
    return 0;
}

int run_verify(RunConfig const& c)
{
    std::vector<int> ids = c.criteria;
    if (ids.empty()) {
        for (int i = 1; i <= bandgap::kCriterionCount; ++i) {
            ids.push_back(i);
        }
    }
    int failed = 0;
    for (int id : ids) {
        auto const r = bandgap::run_criterion(id);
        std::cout << bandgap::format_result(r) << std::flush;
        failed += r.pass() ? 0 : 1;
    }
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " of " + std::to_string(ids.size()) + " FAILED")
              << '\n';
    return failed == 0 ? 0 : 1;
}

int run_optimize(RunConfig const& c)
{
    using namespace bandgap;
    ConstraintSpec spec;
    if (c.mode == "box") {
        double const v0 = c.v0 ? *c.v0 : std::pow(c.eta.value_or(5.0) * 2.0 / c.period, 2);
        spec = BoxConstraint{0.0, v0};
    } else if (c.v1 && c.v2) {
        spec = MomentConstraint{*c.v1, *c.v2};
    } else {
        auto const o = optimum_from_modulus(EllipticModulus(c.k.value_or(0.6)), c.period);
        auto const m = moments(optimum_profile(o, c.n));
        spec = MomentConstraint{m.mean, m.variance + m.mean * m.mean};
    }
    OptimizerOptions opts;
    opts.nBasis = c.nBasis.value_or(0);
    opts.maxIterations = c.maxIter;
    auto const res = optimize(random_profile(spec, c.n, c.seed, c.period), spec, opts, c.seed);
    auto table = profile_table(res.state.profile);
    table.add_meta("mode", c.mode);
    table.add_meta("seed", static_cast<double>(c.seed));
    table.add_meta("converged", res.converged ? "true" : "false");
    table.add_meta("iterations", res.state.iterations);
    table.add_meta("eps1", res.state.edges.eps1);
    table.add_meta("eps2", res.state.edges.eps2);
    table.add_meta("gap", res.state.gap());
    table.add_meta("gap_L2_4", res.state.gap() * c.period * c.period / 4.0);
    table.add_meta("residual", res.state.extremalityResidual);
    emit(table, c.out);
    if (!c.trace.empty()) {
        emit(res.trace, c.trace);
    }
    if (!res.converged) {
        std::cerr << "optimize: did not converge (status " << static_cast<int>(res.state.status) << ")\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bandgap-extremizing periodic potentials: figure data, verification and optimization"};
    app.set_config("--config", "", "key=value configuration file");
    RunConfig c;
    app.add_option("command", c.command, "fig1..fig6, verify or optimize")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "verify", "optimize"}));
    app.add_option("--eta", c.eta, "sqrt(v0) L/2")->check(CLI::PositiveNumber);
    app.add_option("--alpha", c.alpha, "L/2A for the first fig2 set (default: optimum)")->check(CLI::Range(1.0001, 1e6));
    app.add_option("--k", c.k, "elliptic modulus for optimize --mode moments")->check(CLI::Range(0.0, 0.999999));
    app.add_option("--v0", c.v0, "raw barrier height")->check(CLI::PositiveNumber);
    app.add_option("--L", c.period, "period")->check(CLI::PositiveNumber);
    app.add_option("--n", c.n, "grid points per period")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));
    app.add_option("--nbasis", c.nBasis, "plane-wave basis size")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 16));
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--out", c.out, "output CSV (default stdout)");
    app.add_option("--kmax", c.kmax, "largest modulus in fig6")->check(CLI::Range(1e-6, 0.999999));
    app.add_option("--points", c.points, "rows in a sweep or grid points in fig2")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));
    app.add_option("--mode", c.mode, "optimize constraint family")->check(CLI::IsMember({"box", "moments"}));
    app.add_option("--v1", c.v1, "first moment target");
    app.add_option("--v2", c.v2, "second moment target");
    app.add_option("--trace", c.trace, "iteration trace CSV for optimize");
    app.add_option("--max-iter", c.maxIter, "optimizer iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--criterion", c.criteria, "verify only these criteria")->check(CLI::Range(1, bandgap::kCriterionCount));
    CLI11_PARSE(app, argc, argv);

    try {
        if (c.command == "verify") {
            return run_verify(c);
        }
        if (c.command == "optimize") {
            return run_optimize(c);
        }
        return run_fig(c);
    } catch (std::exception const& e) {
        std::cerr << "bandgap " << c.command << ": " << e.what() << '\n';
        return 2;
    }
}
