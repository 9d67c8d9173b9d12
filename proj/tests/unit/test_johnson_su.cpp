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
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "rro/errors.hpp"
#include "rro/johnson_su.hpp"
#include "rro/random.hpp"

using rro::dist::JohnsonSUParams;

namespace {

// Integral of the density over (-inf, upper]. The line is cut at points
// spaced evenly in asinh around the median so narrow peaks are resolved.
double integrate_pdf(const JohnsonSUParams& p, double upper) {
    const auto f = [&p](double x) { return std::exp(rro::dist::su_log_pdf(p, x)); };
    const double inf = std::numeric_limits<double>::infinity();
    const double median = p.xi + p.lambda * std::sinh(-p.gamma / p.delta);
    const double spread = p.lambda / p.delta;
    boost::math::quadrature::tanh_sinh<double> tails;
    double lo = median + spread * std::sinh(-20.0);
    if (upper <= lo) return tails.integrate(f, -inf, upper, 1e-13);
    double total = tails.integrate(f, -inf, lo, 1e-13);
    for (int k = -39; k <= 40 && lo < upper; ++k) {
        const double hi = std::min(upper, median + spread * std::sinh(0.5 * k));
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 0, 1e-13);
        lo = hi;
    }
    if (lo < upper) total += tails.integrate(f, lo, upper, 1e-13);
    return total;
}

JohnsonSUParams random_params(rro::Stream& rng) {
    return {0.2 + 4.8 * rng.uniform_open(), -3.0 + 6.0 * rng.uniform_open(),
            0.5 + 4.5 * rng.uniform_open(), -5.0 + 10.0 * rng.uniform_open()};
}

struct Reference {
    JohnsonSUParams params;
    double median, mean, sd, skewness, log_pdf_at_03, cdf_at_03;
};

// scipy.stats.johnsonsu(gamma, delta, loc=xi, scale=lambda)
const Reference kReference[] = {
    {{1, 0, 1, 0}, 0.0, 0.0, 1.7873242709327608, 0.0, -1.0057386568529199, 0.6162601088614259},
    {{2, -0.5, 1.3, 4}, 4.788336795525631, 5.059744788128917, 2.3318512952919046,
     1.5197545433599846, -4.707821030922279, 0.01110349582345073},
    {{0.7, 2, 3, -1}, -1.5020109227077292, -1.5306896745670273, 0.3067002577773424,
     -0.6416782510585268, -19.020385207454787, 0.9999999995703818},
};

}  // namespace

TEST_CASE("su_log_pdf", "[johnson_su]") {
    const JohnsonSUParams unit{1, 0, 1, 0};
    REQUIRE(rro::dist::su_log_pdf(unit, 0.0) ==
            Catch::Approx(-0.5 * std::log(2.0 * std::numbers::pi)).epsilon(1e-14));
    REQUIRE(rro::dist::su_log_pdf(unit, 0.0) == Catch::Approx(-0.91894).margin(1e-5));
    for (double x : {0.1, 1.0, 7.5, 1e6}) {
        REQUIRE(rro::dist::su_log_pdf(unit, x) == rro::dist::su_log_pdf(unit, -x));
    }
    // deep tails stay finite in log space
    REQUIRE(std::isfinite(rro::dist::su_log_pdf({1, 0, 5, 0}, 1e200)));
    for (const Reference& r : kReference) {
        REQUIRE(rro::dist::su_log_pdf(r.params, 0.3) == Catch::Approx(r.log_pdf_at_03).epsilon(1e-12));
    }
}

TEST_CASE("su_log_pdf normalization", "[johnson_su][property]") {
    rro::Stream rng(31);
    for (int i = 0; i < 20; ++i) {
        const JohnsonSUParams p = random_params(rng);
        const double inf = std::numeric_limits<double>::infinity();
        REQUIRE(integrate_pdf(p, inf) == Catch::Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("su_cdf and su_quantile", "[johnson_su]") {
    const JohnsonSUParams unit{1, 0, 1, 0};
    REQUIRE(rro::dist::su_quantile(unit, 0.5) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(rro::dist::su_quantile({2, 0, 1, 4}, 0.5) == Catch::Approx(4.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(rro::dist::su_quantile(unit, 0.0), rro::DomainError);
    REQUIRE_THROWS_AS(rro::dist::su_quantile(unit, 1.0), rro::DomainError);
    for (const Reference& r : kReference) {
        REQUIRE(rro::dist::su_cdf(r.params, 0.3) == Catch::Approx(r.cdf_at_03).epsilon(1e-10));
    }

    SECTION("integrating the pdf up to the quantile recovers u") {
        rro::Stream rng(32);
        for (int i = 0; i < 10; ++i) {
            const JohnsonSUParams p = random_params(rng);
            for (double u : {0.01, 0.25, 0.5, 0.9}) {
                const double q = rro::dist::su_quantile(p, u);
                REQUIRE(integrate_pdf(p, q) == Catch::Approx(u).margin(1e-6));
                REQUIRE(rro::dist::su_cdf(p, q) == Catch::Approx(u).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("su_analytic_moments", "[johnson_su]") {
    for (const Reference& r : kReference) {
        const auto m = rro::dist::su_analytic_moments(r.params);
        REQUIRE(m.median == Catch::Approx(r.median).margin(1e-12));
        REQUIRE(m.mean == Catch::Approx(r.mean).margin(1e-12));
        REQUIRE(m.sd == Catch::Approx(r.sd).epsilon(1e-12));
        REQUIRE(m.skewness == Catch::Approx(r.skewness).margin(1e-12));
    }
    SECTION("doubling the dispersion") {
        rro::Stream rng(33);
        for (int i = 0; i < 50; ++i) {
            const JohnsonSUParams p = random_params(rng);
            const auto a = rro::dist::su_analytic_moments(p);
            const auto b = rro::dist::su_analytic_moments(p.dispersion_doubled());
            REQUIRE(b.sd == Catch::Approx(2.0 * a.sd).epsilon(1e-14));
            REQUIRE(b.median == Catch::Approx(2.0 * a.median).epsilon(1e-14).margin(1e-14));
            REQUIRE(b.skewness == a.skewness);
        }
    }
}

TEST_CASE("su_sample", "[johnson_su]") {
    SECTION("deterministic per stream") {
        rro::Stream a(5), b(5);
        const auto sa = rro::dist::su_sample({1, 0, 1, 0}, 100, a);
        const auto sb = rro::dist::su_sample({1, 0, 1, 0}, 100, b);
        REQUIRE(sa == sb);
    }
    SECTION("doubled parameters give doubled draws from the same normals") {
        const JohnsonSUParams p{0.8, -1.1, 1.7, 0.3};
        rro::Stream a(6), b(6);
        const auto base = rro::dist::su_sample(p, 1000, a);
        const auto twice = rro::dist::su_sample(p.dispersion_doubled(), 1000, b);
        for (std::size_t i = 0; i < base.size(); ++i) {
            REQUIRE(twice[i] == Catch::Approx(2.0 * base[i]).epsilon(1e-14).margin(1e-14));
        }
    }
    SECTION("scaling law on quantiles") {
        rro::Stream rng(34);
        for (int i = 0; i < 20; ++i) {
            const JohnsonSUParams p = random_params(rng);
            for (double u : {0.001, 0.1, 0.5, 0.77, 0.999}) {
                REQUIRE(rro::dist::su_quantile(p.dispersion_doubled(), u) ==
                        Catch::Approx(2.0 * rro::dist::su_quantile(p, u)).epsilon(1e-14).margin(1e-14));
            }
        }
    }
    SECTION("empirical quantiles within Kolmogorov-Smirnov bounds") {
        const JohnsonSUParams p{1.020730, 1.894112, 1.894112, 1.199563};
        rro::Stream rng(35);
        const std::size_t n = 1000000;
        std::vector<double> v(n);
        rro::dist::su_sample(p, v, rng);
        std::sort(v.begin(), v.end());
        // 3 sigma of the binomial count at each quantile, well inside KS
        for (double u : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
            const double q = rro::dist::su_quantile(p, u);
            const double frac = static_cast<double>(std::lower_bound(v.begin(), v.end(), q) - v.begin()) / n;
            REQUIRE(std::abs(frac - u) < 3.0 * std::sqrt(u * (1.0 - u) / n));
        }
    }
    SECTION("unit parameters have sample median near zero") {
        rro::Stream rng(36);
        const auto s = rro::dist::su_sample({1, 0, 1, 0}, 100001, rng);
        // median sd ~ 1.2533 * (d q / du at 0.5) / sqrt(n)
        REQUIRE(std::abs(s.median()) < 3.0 * 1.2533 / std::sqrt(100001.0));
    }
}

TEST_CASE("JohnsonSUParams::validate", "[johnson_su]") {
    REQUIRE_NOTHROW(rro::dist::validate({1, -2, 1, 0}));
    REQUIRE_THROWS_AS(rro::dist::validate({1, -2, 1, 0}, true), rro::DomainError);
    REQUIRE_THROWS_AS(rro::dist::validate({0, 1, 1, 0}), rro::DomainError);
    REQUIRE_THROWS_AS(rro::dist::validate({1, 1, -1, 0}), rro::DomainError);
    REQUIRE_THROWS_AS(rro::dist::validate({1, 1, 1, std::nan("")}), rro::DomainError);
    const JohnsonSUParams p{1, 2, 3, 4};
    REQUIRE(JohnsonSUParams::from_span(p.to_array()) == p);
    REQUIRE(p.location_scale(3.0, 1.0) == JohnsonSUParams{3, 2, 3, 13});
}
