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

#include "bandgap/csv.hpp"
#include "bandgap/figures.hpp"
#include "bandgap/moment2.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace bandgap;

namespace {

std::string render(CsvTable const& t)
{
    std::ostringstream os;
    t.write(os);
    return os.str();
}

} // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("csv layout")
{
    CsvTable t({"a", "b"});
    t.add_meta("L", 2.0);
    t.add_row({1.0, 2.5});
    CHECK(render(t) == "# L=2\na,b\n1,2.5\n");
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(t.column("c"), std::out_of_range);
    CHECK_THROWS_AS(CsvTable({}), std::invalid_argument);
    CHECK_THROWS(t.write_file("/nonexistent-dir/x.csv"));
}

TEST_CASE("fig1 peaks at the optimal alpha")
{
    auto const t = fig1_table({});
    auto const gap = t.column("gap_L2_4");
    auto const alpha = t.column("alpha");
    auto const i = std::max_element(gap.begin(), gap.end()) - gap.begin();
    CHECK(std::abs(alpha[i] - 3.136) <= 0.005);
    // densities cross next to the peak
    auto const r1 = t.column("rho1_A");
    auto const r2 = t.column("rho2_A");
    CHECK((r1[i - 1] - r2[i - 1]) * (r1[i + 1] - r2[i + 1]) < 0.0);
}

TEST_CASE("fig2 carries both parameter sets")
{
    auto const t = fig2_table({.gridN = 32});
    CHECK(t.rows() == 128);
    auto const set = t.column("param_set");
    CHECK(std::count(set.begin(), set.end(), 1.0) == 64);
    CHECK(std::count(set.begin(), set.end(), 2.0) == 64);
    auto const v = t.column("v");
    CHECK(v[0] == 0.0);
    CHECK(*std::max_element(v.begin(), v.begin() + 64) == doctest::Approx(25.0));
    CHECK(*std::max_element(v.begin() + 64, v.end()) == doctest::Approx(1.5));
    auto const pinned = fig2_table({.alpha = 2.0, .gridN = 16});
    CHECK(render(pinned).find("# set1_alpha=2\n") != std::string::npos);
}

TEST_CASE("fig3 to fig5 sweep")
{
    SweepConfig cfg;
    cfg.count = 12;
    cfg.v0ScaledMin = 1.0;
    cfg.v0ScaledMax = 60.0;
    auto const f3 = fig3_table(cfg);
    auto const f4 = fig4_table(cfg);
    auto const f5 = fig5_table(cfg);
    for (auto const* t : {&f3, &f4, &f5}) {
        CHECK(t->rows() == 12);
        auto const ok = t->column("ok");
        CHECK(std::all_of(ok.begin(), ok.end(), [](double x) { return x == 1.0; }));
    }
    auto const e1 = f4.column("eps1_L2_4");
    auto const e2 = f4.column("eps2_L2_4");
    for (std::size_t i = 0; i < 12; ++i) CHECK(e1[i] < e2[i]);
    auto const opt = f5.column("gap_opt_L2_4");
    auto const sin = f5.column("gap_sin_L2_4");
    for (std::size_t i = 0; i < 12; ++i) CHECK(opt[i] > sin[i]);
    auto const frac = f3.column("two_A_over_L");
    CHECK(std::is_sorted(frac.rbegin(), frac.rend()));
}

TEST_CASE("sinusoid baseline at weak contrast")
{
    double const v0 = 2e-3;
    CHECK(sinusoid_gap(v0, 2.0, 64, 16) == doctest::Approx(v0 / 2).epsilon(1e-3));
}

TEST_CASE("square well indexed by its own sigma")
{
    auto const s = optimal_alpha(3.0);
    double const target = squarewell_sigma_scaled(s);
    auto const found = squarewell_at_sigma(target);
    REQUIRE(found);
    CHECK(found->eta == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_FALSE(squarewell_at_sigma(1e9));
    CHECK_FALSE(squarewell_at_sigma(0.0));
}

TEST_CASE("fig6 dominance and both sigma scalings")
{
    auto const t = fig6_table({.kmax = 0.9, .count = 6});
    CHECK(t.rows() == 6);
    auto const ell = t.column("gap_elliptic_L2_4");
    auto const sin = t.column("gap_sinusoid_L2_4");
    auto const sw = t.column("gap_squarewell_L2_4");
    auto const s = t.column("sigma_L2");
    auto const s4 = t.column("sigma_L2_4");
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(ell[i] >= sin[i]);
        if (std::isfinite(sw[i])) CHECK(ell[i] >= sw[i]);
        CHECK(s4[i] == doctest::Approx(s[i] / 4));
    }
    CHECK_THROWS_AS(fig6_table({.kmax = 1.0}), std::invalid_argument);
}

TEST_CASE("figure output is deterministic")
{
    CHECK(render(fig1_table({.count = 50})) == render(fig1_table({.count = 50})));
    CHECK(render(fig6_table({.count = 3})) == render(fig6_table({.count = 3})));
}
