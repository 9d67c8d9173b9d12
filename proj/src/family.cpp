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

#include "rro/family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rro/errors.hpp"
#include "rro/fit.hpp"
#include "rro/normal.hpp"

namespace rro::dist {

namespace {
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
}

bool DistributionFamily::admits(std::span<const double> params) const {
    if (params.size() != parameter_dimension()) return false;
    if (!std::all_of(params.begin(), params.end(), [](double v) { return std::isfinite(v); })) {
        return false;
    }
    const auto cs = constraints();
    return std::all_of(cs.begin(), cs.end(),
                       [params](const optim::Constraint& c) { return c.satisfied(params); });
}

double DistributionFamily::log_likelihood(std::span<const double> params,
                                          std::span<const double> data) const {
    double total = 0.0;
    for (double x : data) total += log_pdf(params, x);
    return total;
}

ParamVector DistributionFamily::standard_initial_guess(std::span<const double> standardized) const {
    const SampleMoments mom = sample_moments(standardized);
    try {
        return moment_match(*this, {mom.median, mom.sd, mom.skewness}).params;
    } catch (const FitError& e) {
        // a rough match is still a usable start
        return e.best_point();
    }
}

ParamVector DistributionFamily::to_search(std::span<const double> params) const {
    return {params.begin(), params.end()};
}

ParamVector DistributionFamily::from_search(std::span<const double> coords) const {
    return {coords.begin(), coords.end()};
}

std::vector<std::size_t> DistributionFamily::moment_match_coordinates() const {
    std::vector<std::size_t> all(parameter_dimension());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

// ---------------------------------------------------------------------------
// Johnson S_U

std::vector<optim::Constraint> JohnsonSUFamily::constraints() const {
    std::vector<optim::Constraint> out{
        optim::greater_than(0, 0.0, "lambda > 0"),
        optim::greater_than(2, 0.0, "delta > 0"),
    };
    if (strict_gamma_) out.push_back(optim::greater_than(1, 0.0, "gamma > 0"));
    return out;
}

double JohnsonSUFamily::log_pdf(std::span<const double> params, double x) const {
    return su_log_pdf(JohnsonSUParams::from_span(params), x);
}

double JohnsonSUFamily::log_likelihood(std::span<const double> params,
                                       std::span<const double> data) const {
    const JohnsonSUParams p = JohnsonSUParams::from_span(params);
    const double inv_lambda = 1.0 / p.lambda;
    double kernel = 0.0;
    for (double x : data) {
        const double t = (x - p.xi) * inv_lambda;
        const double u = p.gamma + p.delta * std::asinh(t);
        kernel += std::log(std::hypot(1.0, t)) + 0.5 * u * u;
    }
    const auto n = static_cast<double>(data.size());
    return n * (std::log(p.delta) - std::log(p.lambda) - kLogSqrt2Pi) - kernel;
}

double JohnsonSUFamily::quantile(std::span<const double> params, double u) const {
    return su_quantile(JohnsonSUParams::from_span(params), u);
}

void JohnsonSUFamily::sample(std::span<const double> params, std::span<double> out,
                             Stream& rng) const {
    su_sample(JohnsonSUParams::from_span(params), out, rng);
}

std::optional<DistributionMoments> JohnsonSUFamily::analytic_moments(
    std::span<const double> params) const {
    return su_analytic_moments(JohnsonSUParams::from_span(params));
}

ParamVector JohnsonSUFamily::location_scale(std::span<const double> params, double factor,
                                            double offset) const {
    const auto a = JohnsonSUParams::from_span(params).location_scale(factor, offset).to_array();
    return {a.begin(), a.end()};
}

ParamVector JohnsonSUFamily::standard_moment_start(double skewness) const {
    double gamma = 0.0;
    if (strict_gamma_ || skewness < 0.0) {
        gamma = 1.0;
    } else if (skewness > 0.0) {
        gamma = -1.0;
    }
    return {1.0, gamma, 1.0, 0.0};
}

ParamVector JohnsonSUFamily::to_search(std::span<const double> params) const {
    const JohnsonSUParams p = JohnsonSUParams::from_span(params);
    const double omega = p.gamma / p.delta;
    return {p.xi - p.lambda * std::sinh(omega),
            std::log(p.lambda * std::cosh(omega) / p.delta), std::log(p.delta), omega};
}

ParamVector JohnsonSUFamily::from_search(std::span<const double> coords) const {
    const double median = coords[0];
    const double delta = std::exp(coords[2]);
    const double omega = coords[3];
    const double lambda = delta * std::exp(coords[1]) / std::cosh(omega);
    return {lambda, omega * delta, delta, median + lambda * std::sinh(omega)};
}

ParamVector JohnsonSUFamily::search_steps(std::span<const double>) const {
    return {0.25, 0.25, 0.5, 0.5};
}

std::vector<optim::Constraint> JohnsonSUFamily::search_bounds() const {
    return {
        optim::greater_than(0, -kMaxAbsMedian, "median > -1e3"),
        optim::less_than(0, kMaxAbsMedian, "median < 1e3"),
        optim::greater_than(1, -kMaxAbsLogScale, "log scale > -20"),
        optim::less_than(1, kMaxAbsLogScale, "log scale < 20"),
        optim::greater_than(2, std::log(kMinDelta), "delta > 0.1"),
        optim::less_than(2, std::log(kMaxDelta), "delta < 50"),
        optim::greater_than(3, -kMaxAbsOmega, "gamma/delta > -3"),
        optim::less_than(3, kMaxAbsOmega, "gamma/delta < 3"),
    };
}

// ---------------------------------------------------------------------------
// Normal

std::vector<optim::Constraint> NormalFamily::constraints() const {
    return {optim::greater_than(1, 0.0, "sigma > 0")};
}

double NormalFamily::log_pdf(std::span<const double> params, double x) const {
    const double z = (x - params[0]) / params[1];
    return -std::log(params[1]) - kLogSqrt2Pi - 0.5 * z * z;
}

double NormalFamily::quantile(std::span<const double> params, double u) const {
    return params[0] + params[1] * normal_quantile(u);
}

void NormalFamily::sample(std::span<const double> params, std::span<double> out,
                          Stream& rng) const {
    NormalDraws normal(rng);
    for (double& v : out) v = params[0] + params[1] * normal();
}

std::optional<DistributionMoments> NormalFamily::analytic_moments(
    std::span<const double> params) const {
    return DistributionMoments{params[0], params[0], params[1], 0.0};
}

ParamVector NormalFamily::location_scale(std::span<const double> params, double factor,
                                         double offset) const {
    return {params[0] * factor + offset, params[1] * factor};
}

ParamVector NormalFamily::standard_moment_start(double) const { return {0.0, 1.0}; }

ParamVector NormalFamily::search_steps(std::span<const double> coords) const {
    return {0.5 * coords[1], 0.5 * coords[1]};
}

ParamVector NormalFamily::standard_initial_guess(std::span<const double> standardized) const {
    const SampleMoments mom = sample_moments(standardized);
    return {mom.mean, mom.sd};
}

std::unique_ptr<DistributionFamily> make_family(const std::string& name, bool strict_gamma) {
    if (name == "johnson-su") return std::make_unique<JohnsonSUFamily>(strict_gamma);
    if (name == "normal") return std::make_unique<NormalFamily>();
    return nullptr;
}

}  // namespace rro::dist
