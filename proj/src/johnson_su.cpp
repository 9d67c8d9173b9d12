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

#include "rro/johnson_su.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rro/errors.hpp"
#include "rro/normal.hpp"

namespace rro::dist {

namespace {
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
}

JohnsonSUParams JohnsonSUParams::from_span(std::span<const double> p) {
    if (p.size() != 4) {
        throw DomainError("Johnson S_U needs 4 parameters, got " + std::to_string(p.size()));
    }
    return {p[0], p[1], p[2], p[3]};
}

void validate(const JohnsonSUParams& p, bool strict_gamma) {
    if (!std::isfinite(p.lambda) || !std::isfinite(p.gamma) || !std::isfinite(p.delta) ||
        !std::isfinite(p.xi)) {
        throw DomainError("Johnson S_U parameters must be finite");
    }
    if (!(p.lambda > 0.0)) throw DomainError("Johnson S_U needs lambda > 0");
    if (!(p.delta > 0.0)) throw DomainError("Johnson S_U needs delta > 0");
    if (strict_gamma && !(p.gamma > 0.0)) {
        throw DomainError("Johnson S_U strict mode needs gamma > 0");
    }
}

double su_transform(const JohnsonSUParams& p, double z) noexcept {
    // sinh through one expm1: about twice as fast as std::sinh and accurate near 0
    const double e = std::expm1((z - p.gamma) / p.delta);
    return p.lambda * 0.5 * (e + e / (e + 1.0)) + p.xi;
}

double su_log_pdf(const JohnsonSUParams& p, double x) noexcept {
    const double t = (x - p.xi) / p.lambda;
    const double u = p.gamma + p.delta * std::asinh(t);
    // log sqrt(1 + t^2) without overflow for large |t|
    return std::log(p.delta) - std::log(p.lambda) - kLogSqrt2Pi - std::log(std::hypot(1.0, t)) -
           0.5 * u * u;
}

double su_cdf(const JohnsonSUParams& p, double x) noexcept {
    return normal_cdf(p.gamma + p.delta * std::asinh((x - p.xi) / p.lambda));
}

double su_quantile(const JohnsonSUParams& p, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("Johnson S_U quantile needs u in (0, 1), got " + std::to_string(u));
    }
    return su_transform(p, normal_quantile(u));
}

void su_sample(const JohnsonSUParams& p, std::span<double> out, Stream& rng) {
    NormalDraws normal(rng);
    for (double& v : out) v = su_transform(p, normal());
}

Sample su_sample(const JohnsonSUParams& p, std::size_t count, Stream& rng) {
    std::vector<double> values(count);
    su_sample(p, values, rng);
    return Sample(std::move(values));
}

DistributionMoments su_analytic_moments(const JohnsonSUParams& p) noexcept {
    const double w = std::exp(1.0 / (p.delta * p.delta));
    const double omega = p.gamma / p.delta;
    const double sqrt_w = std::sqrt(w);
    const double median = p.xi - p.lambda * std::sinh(omega);
    const double mean = p.xi - p.lambda * sqrt_w * std::sinh(omega);
    const double var = 0.5 * p.lambda * p.lambda * (w - 1.0) * (w * std::cosh(2.0 * omega) + 1.0);
    const double mu3 = -0.25 * p.lambda * p.lambda * p.lambda * sqrt_w * (w - 1.0) * (w - 1.0) *
                       (w * (w + 2.0) * std::sinh(3.0 * omega) + 3.0 * std::sinh(omega));
    return {median, mean, std::sqrt(var), mu3 / std::pow(var, 1.5)};
}

}  // namespace rro::dist
