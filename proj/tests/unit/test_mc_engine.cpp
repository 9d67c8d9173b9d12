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

#include <cmath>
#include <limits>

#include "rro/errors.hpp"
#include "rro/exact_null.hpp"
#include "rro/mc_engine.hpp"
#include "rro/random.hpp"

using rro::Method;
using rro::Sample;
using rro::Tail;
using rro::dist::JohnsonSUFamily;
using rro::dist::JohnsonSUParams;
using rro::dist::NormalFamily;

namespace {

Sample su_draw(const JohnsonSUParams& p, std::size_t n, std::uint64_t seed) {
    rro::Stream rng(seed);
    return rro::dist::su_sample(p, n, rng);
}

double binomial_sigma(double p, std::size_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

const JohnsonSUParams kLeft{1.020730, 1.894112, 1.894112, 1.199563};

}  // namespace

TEST_CASE("mc_null::determinism", "[mc]") {
    const auto a = rro::mc_null(kLeft, kLeft, 15, 20, 2000, 7, 1);
    const auto b = rro::mc_null(kLeft, kLeft, 15, 20, 2000, 7, 8);
    REQUIRE(std::equal(a.values().begin(), a.values().end(), b.values().begin(),
                       b.values().end()));
    REQUIRE(a.provenance() == rro::Provenance::monte_carlo);
    REQUIRE(a.seed() == 7u);
    REQUIRE(a.cardinality() == 2000);

    const auto c = rro::mc_null(kLeft, kLeft, 15, 20, 2000, 8, 1);
    REQUIRE_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin(),
                             c.values().end()));
}

TEST_CASE("mc_replicates::nested prefixes", "[mc]") {
    const JohnsonSUFamily su;
    const auto p = kLeft.to_array();
    const auto full = rro::mc_replicates(su, p, p, 6, 9, 500, 3, 3);
    const auto head = rro::mc_replicates(su, p, p, 6, 9, 120, 3, 1);
    REQUIRE(std::equal(head.begin(), head.end(), full.begin()));
    REQUIRE(rro::mc_replicate(su, p, p, 6, 9, 3, 417) == full[417]);
}

TEST_CASE("mc_null::input checks", "[mc]") {
    REQUIRE_THROWS_AS(rro::mc_null(kLeft, kLeft, 15, 15, 99, 0), rro::DomainError);
    REQUIRE_THROWS_AS(rro::mc_null(kLeft, kLeft, 1, 15, 1000, 0), rro::DomainError);
    REQUIRE_THROWS_AS(rro::mc_null({1, 0, -1, 0}, kLeft, 15, 15, 1000, 0), rro::DomainError);
}

TEST_CASE("mc_null::label-swap symmetry", "[mc]") {
    const std::size_t b = 20000;
    const auto xi = rro::mc_null(kLeft, kLeft, 15, 15, b, 11);
    double sum = 0.0, sumsq = 0.0;
    std::size_t finite = 0;
    for (double v : xi.values()) {
        if (!std::isfinite(v)) continue;
        sum += v;
        sumsq += v * v;
        ++finite;
    }
    const double mean = sum / static_cast<double>(finite);
    const double sd = std::sqrt(sumsq / static_cast<double>(finite) - mean * mean);
    REQUIRE(std::abs(mean) < 3.0 * sd / std::sqrt(static_cast<double>(finite)));
    // both tails hold about the same mass
    const double left = static_cast<double>(xi.count_at_most(-1.0)) / b;
    const double right = static_cast<double>(xi.count_at_least(1.0)) / b;
    REQUIRE(std::abs(left - right) < 3.0 * std::sqrt(2.0) * binomial_sigma(0.5 * (left + right), b));
}

TEST_CASE("mc_null::agrees with the exact null at m = n = 5", "[mc][property]") {
    const std::size_t b = 10000;
    const auto exact = rro::exact_null_distribution(5, 5);
    const auto mc = rro::mc_null(kLeft, kLeft, 5, 5, b, 12);
    const std::vector<double> support(exact.values().begin(), exact.values().end());
    for (double v : support) {
        const double pe = static_cast<double>(exact.count_at_least(v)) / exact.cardinality();
        const double pm = static_cast<double>(mc.count_at_least(v)) / b;
        REQUIRE(std::abs(pm - pe) <= 3.0 * binomial_sigma(pe, b));
    }
}

TEST_CASE("rro_mc_test", "[mc]") {
    const JohnsonSUFamily su;
    rro::McTestOptions options;
    options.replicates = 2000;
    options.seed = 5;

    SECTION("identical samples") {
        const Sample x = su_draw(kLeft, 15, 51);
        const auto r = rro::rro_mc_test(x, x, su, options, 0.05, Tail::two);
        REQUIRE(r.statistic.value == 0.0);
        // both fitted parents coincide, so each tail holds half the null up to
        // Monte-Carlo error; 15 * 15 is odd and no replicate equals zero
        REQUIRE(r.p_two >= 1.0 - 2.0 * 3.0 * binomial_sigma(0.5, 2000));
        REQUIRE(r.p_left + r.p_right >= 1.0);
        REQUIRE(r.method == Method::mc);
        REQUIRE(r.null_cardinality == 2000);
        REQUIRE(r.seed == 5u);
        REQUIRE(r.fits.has_value());
        REQUIRE(r.fits->shift == 0.0);
        REQUIRE_FALSE(r.rejects());
    }
    SECTION("statistic comes from the unaligned samples") {
        const Sample x = su_draw(kLeft, 15, 52);
        const Sample y = su_draw(kLeft, 20, 53).shifted(0.8);
        const auto r = rro::rro_mc_test(x, y, su, options, 0.05, Tail::left);
        REQUIRE(r.statistic.value == rro::rro_statistic(x, y).value);
        REQUIRE(r.fits->shift == rro::hodges_lehmann_shift(x, y));
        REQUIRE(r.p_value() == r.p_left);
        REQUIRE(r.p_two == rro::two_tailed(r.p_left, r.p_right));
        REQUIRE(r.critical_left.has_value());
        REQUIRE_FALSE(r.critical_right.has_value());
        REQUIRE(r.rejects() == (r.p_left < 0.05));
        // same inputs, same result
        const auto again = rro::rro_mc_test(x, y, su, options, 0.05, Tail::left);
        REQUIRE(again.p_left == r.p_left);
        REQUIRE(again.critical_left == r.critical_left);
        REQUIRE(again.fits->params_x == r.fits->params_x);
        options.workers = 4;
        const auto threaded = rro::rro_mc_test(x, y, su, options, 0.05, Tail::left);
        REQUIRE(threaded.p_left == r.p_left);
    }
    SECTION("fit failures name the sample") {
        options.fit.max_evaluations = 5;
        const Sample x = su_draw(kLeft, 15, 54);
        const Sample y = su_draw(kLeft, 15, 55);
        try {
            rro::rro_mc_test(x, y, su, options, 0.05, Tail::two);
            FAIL("expected a fit error");
        } catch (const rro::FitError& e) {
            REQUIRE(std::string(e.what()).find("sample X") != std::string::npos);
        }
    }
    SECTION("alpha outside (0, 1)") {
        const Sample x = su_draw(kLeft, 15, 56);
        REQUIRE_THROWS_AS(rro::rro_mc_test(x, x, su, options, 0.0, Tail::two), rro::DomainError);
        REQUIRE_THROWS_AS(rro::rro_normal_test(x, x, 1.5, Tail::two), rro::DomainError);
    }
}

TEST_CASE("rro_mc_test::null calibration", "[mc][slow]") {
    // whole-pipeline rejection rate when both samples share one parent
    const JohnsonSUFamily su;
    rro::McTestOptions options;
    options.replicates = 2000;
    const std::size_t reps = 2000;
    std::size_t rejections = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        options.seed = rro::derive_seed(61, {r, 1});
        const Sample x = su_draw(kLeft, 20, rro::derive_seed(61, {r, 2}));
        const Sample y = su_draw(kLeft, 20, rro::derive_seed(61, {r, 3}));
        if (rro::rro_mc_test(x, y, su, options, 0.05, Tail::two).rejects()) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / reps;
    INFO("rejection rate " << rate);
    REQUIRE(std::abs(rate - 0.05) <= 0.015);
}

TEST_CASE("rro_normal_test", "[mc]") {
    const Sample x({1.0, 2.0, 3.0, 4.0});
    const auto same = rro::rro_normal_test(x, x, 0.05, Tail::two);
    REQUIRE(same.p_two == 1.0);
    REQUIRE(same.method == Method::normal);
    REQUIRE(same.null_cardinality == 0);
    REQUIRE(same.critical_left == Catch::Approx(-1.959964).margin(1e-6));
    REQUIRE(same.critical_right == Catch::Approx(1.959964).margin(1e-6));

    const auto one = rro::rro_normal_test(x, x, 0.05, Tail::right);
    REQUIRE(one.critical_right == Catch::Approx(1.6449).margin(1e-4));
    REQUIRE_FALSE(one.critical_left.has_value());

    const auto sep = rro::rro_normal_test({1, 2}, {3, 4}, 0.05, Tail::left);
    REQUIRE(sep.statistic.degenerate);
    REQUIRE(sep.p_left == 0.0);
    REQUIRE(sep.rejects());
}

TEST_CASE("rro_normal_test agrees with mc for normal parents", "[mc]") {
    // the Monte-Carlo null from normal parents at m = n = 60 is close to the
    // standard normal reference of the normal backend
    const NormalFamily normal;
    const std::size_t b = 10000;
    const std::vector<double> px{0.0, 1.0};
    const std::vector<double> py{0.0, 1.5};
    const auto xi = rro::mc_null(normal, px, py, 60, 60, b, 71);
    for (double z : {-2.5, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) {
        const double pn = rro::normal_pvalue(z, Tail::left);
        const double pm = rro::mc_pvalue(xi, z, Tail::left);
        INFO("z " << z << " mc " << pm << " normal " << pn);
        REQUIRE(std::abs(pm - pn) <= 3.0 * binomial_sigma(pn, b));
    }
}

TEST_CASE("rro_exact_test", "[mc]") {
    const Sample x({0.1, 0.5, 0.9, 1.4});
    const Sample y({0.3, 1.1, 1.7, 2.0, 2.2});
    const auto r = rro::rro_exact_test(x, y, 0.1, Tail::two);
    const auto xi = rro::exact_null_distribution(4, 5);
    const auto p = rro::mc_pvalues(xi, rro::rro_statistic(x, y).value);
    REQUIRE(r.method == Method::exact);
    REQUIRE(r.null_cardinality == 126);
    REQUIRE(r.p_left == p.left);
    REQUIRE(r.p_right == p.right);
    REQUIRE(r.p_two == p.two);
    REQUIRE_FALSE(r.seed.has_value());
    const auto c = rro::critical_values(xi, 0.1, Tail::two);
    REQUIRE(r.critical_left == c.left);
    REQUIRE(r.critical_right == c.right);

    std::vector<double> big(16);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
    REQUIRE_THROWS_AS(rro::rro_exact_test(Sample(big), Sample(big), 0.05, Tail::two),
                      rro::EnumerationCapExceeded);
}
