/*
   Copyright 2026 The rro authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>

#include "rro/errors.hpp"
#include "rro/exact_null.hpp"
#include "rro/random.hpp"
#include "rro/simulation.hpp"

using rro::Method;
using rro::Sample;
using rro::Tail;
using rro::sim::Band;
using rro::sim::SimulationConfig;
using rro::sim::Skew;

namespace {

SimulationConfig small_config() {
    SimulationConfig c;
    c.set_id = "1";
    c.skew = Skew::left;
    c.parent_1.moments = rro::dist::MomentSpec{0, 1, -1.5};
    c.parent_2.moments = rro::dist::MomentSpec{0, 1, -1.5};
    c.size_pairs = {{10, 12}, {15, 15}};
    c.pair_count = 100;
    c.mc_replicates = 200;
    c.alphas = rro::sim::default_alphas();
    c.master_seed = 3;
    return c;
}

bool same_rows(const rro::sim::SimulationResult& a, const rro::sim::SimulationResult& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& r = a.rows[i];
        const auto& s = b.rows[i];
        if (r.m != s.m || r.n != s.n || r.method != s.method || r.alpha != s.alpha ||
            r.metric_value != s.metric_value || r.rejections != s.rejections ||
            r.mc_replicates != s.mc_replicates) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("cliff_d", "[simulation]") {
    REQUIRE(rro::sim::cliff_d({1, 2}, {3, 4}) == 1.0);
    REQUIRE(rro::sim::cliff_d({3, 4}, {1, 2}) == -1.0);
    REQUIRE(rro::sim::cliff_d({1, 2}, {1, 2}) == 0.0);
    REQUIRE(rro::sim::cliff_d({1, 3}, {2, 4}) == 0.5);

    const std::vector<double> a{1, 3}, b{0, 2};
    REQUIRE(rro::sim::cliff_d_sorted(a, b, 2.0) == 0.5);
    REQUIRE(rro::sim::cliff_d_sorted(a, b, 10.0) == 1.0);

    rro::Stream rng(91);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> s1(2 + rng() % 10), s2(2 + rng() % 10);
        for (double& v : s1) v = static_cast<double>(rng() % 6);
        for (double& v : s2) v = static_cast<double>(rng() % 6);
        long gt = 0, lt = 0;
        for (double u : s1)
            for (double v : s2) {
                gt += v > u;
                lt += v < u;
            }
        const double expected = static_cast<double>(gt - lt) / static_cast<double>(s1.size() * s2.size());
        REQUIRE(rro::sim::cliff_d(Sample(s1), Sample(s2)) == Catch::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("excess_type1 and power", "[simulation]") {
    std::vector<double> p(10000, 0.5);
    std::fill(p.begin(), p.begin() + 600, 0.01);
    REQUIRE(rro::sim::excess_type1(p, 0.05) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(rro::sim::excess_type1(std::vector<double>(10000, 0.5), 0.01) ==
            Catch::Approx(-1.0).margin(1e-12));

    std::vector<double> q(10000, 0.9);
    std::fill(q.begin(), q.begin() + 8000, 0.001);
    REQUIRE(rro::sim::power(q, 0.05) == Catch::Approx(80.0).margin(1e-12));
    REQUIRE(rro::sim::power(std::vector<double>(50, 1.0), 0.05) == 0.0);

    SECTION("uniform grid is calibrated at grid levels") {
        const std::size_t n = 1000;
        std::vector<double> grid(n);
        for (std::size_t i = 0; i < n; ++i) grid[i] = (static_cast<double>(i) + 0.5) / n;
        for (std::size_t k : {10, 50, 100, 370}) {
            REQUIRE(rro::sim::excess_type1(grid, static_cast<double>(k) / n) ==
                    Catch::Approx(0.0).margin(100.0 / n));
        }
    }
    SECTION("metric identity and monotonicity") {
        rro::Stream rng(92);
        std::vector<double> v(3000);
        for (double& e : v) e = rng.uniform_open() * rng.uniform_open();
        double prev = -1.0;
        for (double a : rro::sim::default_alphas()) {
            REQUIRE(rro::sim::power(v, a) ==
                    Catch::Approx(rro::sim::excess_type1(v, a) + 100.0 * a).epsilon(1e-12));
            REQUIRE(rro::sim::power(v, a) >= prev);
            prev = rro::sim::power(v, a);
        }
    }
    SECTION("domain") {
        REQUIRE_THROWS_AS(rro::sim::excess_type1(std::vector<double>{}, 0.05), rro::DomainError);
        REQUIRE_THROWS_AS(rro::sim::power(std::vector<double>{0.2, 1.2}, 0.05), rro::DomainError);
    }
}

TEST_CASE("binomial_band", "[simulation]") {
    const Band b = rro::sim::binomial_band(100000, 0.05, 0.01);
    const double half = 2.5758293 * std::sqrt(0.05 * 0.95 / 1e5) * 100.0;
    REQUIRE(half == Catch::Approx(0.178).margin(5e-4));
    REQUIRE(b.high == Catch::Approx(half).margin(0.005));
    REQUIRE(-b.low == Catch::Approx(half).margin(0.005));

    double prev = 1e9;
    for (std::size_t trials : {100, 1000, 5000, 100000, 10000000}) {
        const Band c = rro::sim::binomial_band(trials, 0.05);
        REQUIRE(c.low <= 0.0);
        REQUIRE(c.high >= 0.0);
        REQUIRE(c.high - c.low <= prev);
        prev = c.high - c.low;
    }
    REQUIRE(prev < 0.05);
    REQUIRE_THROWS_AS(rro::sim::binomial_band(99, 0.05), rro::DomainError);
}

TEST_CASE("calibrated null stays inside the band", "[simulation][property]") {
    // exact permutation p-values of pairs from one continuous parent
    const std::size_t pairs = 5000;
    const auto xi = rro::exact_null_distribution(9, 9);
    rro::Stream rng(93);
    rro::NormalDraws z(rng);
    std::vector<double> p(pairs);
    for (double& e : p) {
        std::vector<double> x(9), y(9);
        for (double& v : x) v = z();
        for (double& v : y) v = z();
        e = rro::mc_pvalue(xi, rro::rro_statistic(Sample(x), Sample(y)).value, Tail::two);
    }
    for (double a : rro::sim::default_alphas()) {
        const Band band = rro::sim::binomial_band(pairs, a);
        const double excess = rro::sim::excess_type1(p, a);
        INFO("alpha " << a << " excess " << excess);
        REQUIRE(excess >= band.low);
        REQUIRE(excess <= band.high);
    }
}

TEST_CASE("shift_for_effect_size", "[simulation]") {
    const auto left = rro::dist::moment_match_su({0, 1, -1.5});
    REQUIRE(rro::sim::shift_for_effect_size(left, 1e-4, 1) < 1e-3);
    const double s = rro::sim::shift_for_effect_size(left, 0.25, 1);
    REQUIRE(s == Catch::Approx(0.3723).margin(0.02));
    REQUIRE(rro::sim::shift_for_effect_size(left, 0.25, 1) == s);
    REQUIRE_THROWS_AS(rro::sim::shift_for_effect_size(left, 0.0, 1), rro::DomainError);
    REQUIRE_THROWS_AS(rro::sim::shift_for_effect_size(left, 1.0, 1), rro::DomainError);
}

TEST_CASE("parents", "[simulation]") {
    rro::sim::ParentSpec base;
    base.moments = rro::dist::MomentSpec{0, 1, 1.5};
    rro::sim::ParentSpec doubled = base;
    doubled.dispersion_doubled = true;
    const auto a = rro::dist::su_analytic_moments(rro::sim::resolve(base));
    const auto b = rro::dist::su_analytic_moments(rro::sim::resolve(doubled));
    REQUIRE(b.sd == Catch::Approx(2.0 * a.sd).epsilon(1e-14));
    REQUIRE(b.skewness == a.skewness);

    rro::sim::ParentSpec explicit_params;
    explicit_params.params = rro::dist::JohnsonSUParams{1, 1, 1, 0};
    REQUIRE(rro::sim::resolve(explicit_params) == rro::dist::JohnsonSUParams{1, 1, 1, 0});
    REQUIRE_THROWS_AS(rro::sim::resolve(rro::sim::ParentSpec{}), rro::DomainError);
}

TEST_CASE("preset_configs", "[simulation]") {
    REQUIRE(rro::sim::preset_set_ids().size() == 9);
    for (const std::string& id : rro::sim::preset_set_ids()) {
        for (const SimulationConfig& c : rro::sim::preset_configs(id, 5000, 10000, 0)) {
            REQUIRE_NOTHROW(rro::sim::validate(c));
            REQUIRE(c.set_id == id);
            REQUIRE(c.pair_count == 5000);
            REQUIRE(c.alphas == rro::sim::default_alphas());
            const bool effect = id == "3a" || id == "3b";
            REQUIRE(c.effect_size_target.has_value() == effect);
            REQUIRE(c.tail == (effect ? Tail::left : Tail::two));
        }
    }
    REQUIRE(rro::sim::preset_configs("1", 5000, 10000, 0).size() == 2);
    REQUIRE(rro::sim::preset_configs("4", 5000, 10000, 0).size() == 1);
    REQUIRE(*rro::sim::preset_configs("3b", 5000, 10000, 0)[0].effect_size_target == 0.5);
    const auto set8 = rro::sim::preset_configs("8", 5000, 100000, 0)[0];
    REQUIRE(set8.mc_sweep == std::vector<std::size_t>{100, 1000, 10000, 100000});
    REQUIRE(set8.size_pairs == std::vector<std::pair<std::size_t, std::size_t>>{{15, 15}});
    const auto set2 = rro::sim::preset_configs("2", 5000, 10000, 0)[0];
    REQUIRE(set2.parent_2.dispersion_doubled);
    REQUIRE_FALSE(set2.parent_1.dispersion_doubled);
    REQUIRE_THROWS_AS(rro::sim::preset_configs("9", 5000, 10000, 0), rro::DomainError);
}

TEST_CASE("validate", "[simulation]") {
    SimulationConfig c = small_config();
    REQUIRE_NOTHROW(rro::sim::validate(c));
    c.pair_count = 99;
    REQUIRE_THROWS_AS(rro::sim::validate(c), rro::DomainError);
    c = small_config();
    c.alphas = {0.05, 1.0};
    REQUIRE_THROWS_AS(rro::sim::validate(c), rro::DomainError);
    c = small_config();
    c.mc_replicates = 50;
    REQUIRE_THROWS_AS(rro::sim::validate(c), rro::DomainError);
    c = small_config();
    c.size_pairs = {{1, 5}};
    REQUIRE_THROWS_AS(rro::sim::validate(c), rro::DomainError);
}

TEST_CASE("run_simulation_set", "[simulation]") {
    const SimulationConfig c = small_config();
    const auto r = rro::sim::run_simulation_set(c);

    SECTION("row layout") {
        REQUIRE(r.rows.size() == 2 * 2 * 10);
        for (const auto& row : r.rows) {
            REQUIRE(row.metric_name == "excess_type1_percent");
            REQUIRE(row.mc_replicates == (row.method == Method::mc ? 200u : 0u));
            REQUIRE(row.metric_value ==
                    Catch::Approx(100.0 * (static_cast<double>(row.rejections) / 100.0 - row.alpha))
                        .margin(1e-12));
            REQUIRE(row.metric_value >= -100.0 * row.alpha);
            REQUIRE(row.metric_value <= 100.0 * (1.0 - row.alpha));
            const Band band = rro::sim::binomial_band(100, row.alpha);
            REQUIRE(row.band.low == band.low);
            REQUIRE(row.band.high == band.high);
        }
        REQUIRE(r.find(15, 15, Method::normal, 0.03) != nullptr);
        REQUIRE(r.find(15, 15, Method::mc, 0.03, 200) != nullptr);
        REQUIRE(r.find(15, 15, Method::mc, 0.03, 1000) == nullptr);
        REQUIRE(r.find(5, 5, Method::mc, 0.03) == nullptr);
        REQUIRE(r.p_values.empty());
        REQUIRE_FALSE(r.median_shift.has_value());
    }
    SECTION("rejections grow with alpha") {
        for (auto [m, n] : c.size_pairs) {
            for (Method method : {Method::mc, Method::normal}) {
                std::size_t prev = 0;
                for (double a : c.alphas) {
                    const auto* row = r.find(m, n, method, a);
                    REQUIRE(row != nullptr);
                    REQUIRE(row->rejections >= prev);
                    prev = row->rejections;
                }
            }
        }
    }
    SECTION("independent of the worker count") {
        SimulationConfig threaded = c;
        threaded.workers = 3;
        REQUIRE(same_rows(r, rro::sim::run_simulation_set(threaded)));
    }
    SECTION("retained p-values reproduce the rows") {
        SimulationConfig keep = c;
        keep.retain_p_values = true;
        const auto k = rro::sim::run_simulation_set(keep);
        REQUIRE(same_rows(r, k));
        REQUIRE(k.p_values.size() == 4);
        for (const auto& set : k.p_values) {
            REQUIRE(set.p_values.size() == 100);
            for (double a : c.alphas) {
                const auto* row = k.find(set.m, set.n, set.method, a, set.mc_replicates);
                REQUIRE(rro::sim::excess_type1(set.p_values, a) ==
                        Catch::Approx(row->metric_value).margin(1e-12));
            }
        }
    }
    SECTION("a different master seed changes the draws") {
        SimulationConfig other = c;
        other.master_seed = 4;
        REQUIRE_FALSE(same_rows(r, rro::sim::run_simulation_set(other)));
    }
}

TEST_CASE("run_simulation_set with an effect size and a sweep", "[simulation]") {
    SimulationConfig c = small_config();
    c.set_id = "3b";
    c.size_pairs = {{10, 10}};
    c.effect_size_target = 0.5;
    c.tail = Tail::left;
    c.mc_sweep = {100, 400};
    c.mc_replicates = 400;
    const auto r = rro::sim::run_simulation_set(c);
    REQUIRE(r.median_shift.has_value());
    REQUIRE(r.parent_2.xi == Catch::Approx(r.parent_1.xi + *r.median_shift).epsilon(1e-14));
    REQUIRE(r.rows.size() == 3 * 10);
    for (const auto& row : r.rows) {
        REQUIRE(row.metric_name == "power_percent");
        REQUIRE(row.metric_value >= 0.0);
        REQUIRE(row.metric_value <= 100.0);
        const Band band = rro::sim::binomial_band(100, row.alpha);
        REQUIRE(row.band.low == Catch::Approx(band.low + 100.0 * row.alpha));
    }
    REQUIRE(r.find(10, 10, Method::mc, 0.05, 100) != nullptr);
    REQUIRE(r.find(10, 10, Method::mc, 0.05, 400) != nullptr);
    // a shift of about 0.8 sd moves most samples to rejection at 10 per group
    REQUIRE(r.find(10, 10, Method::normal, 0.10)->metric_value > 30.0);
}
