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

#pragma once

#include <array>
#include <span>

#include "rro/random.hpp"
#include "rro/sample.hpp"

namespace rro::dist {

/// Johnson S_U parameters: r = lambda * sinh((z - gamma) / delta) + xi with z
/// standard normal. lambda > 0 and delta > 0 always; gamma > 0 only under the
/// optional strict constraint mode.
struct JohnsonSUParams {
    double lambda = 1.0;  // scale
    double gamma = 0.0;   // shape, sets the sign of the skew (gamma > 0 skews left)
    double delta = 1.0;   // shape, tail weight
    double xi = 0.0;      // location

    std::array<double, 4> to_array() const noexcept { return {lambda, gamma, delta, xi}; }
    static JohnsonSUParams from_span(std::span<const double> p);

    /// Parameters of factor * r + offset.
    JohnsonSUParams location_scale(double factor, double offset = 0.0) const noexcept {
        return {lambda * factor, gamma, delta, xi * factor + offset};
    }

    /// Same median and skewness with twice the standard deviation.
    JohnsonSUParams dispersion_doubled() const noexcept { return location_scale(2.0); }

    bool operator==(const JohnsonSUParams&) const = default;
};

/// Throws DomainError unless lambda > 0, delta > 0 (and gamma > 0 when
/// `strict_gamma` is set), all finite.
void validate(const JohnsonSUParams& p, bool strict_gamma = false);

/// Central summary of a distribution.
struct MomentSpec {
    double median = 0.0;
    double sd = 1.0;
    double skewness = 0.0;
};

struct DistributionMoments {
    double median;
    double mean;
    double sd;
    double skewness;
};

double su_transform(const JohnsonSUParams& p, double z) noexcept;
double su_log_pdf(const JohnsonSUParams& p, double x) noexcept;
double su_cdf(const JohnsonSUParams& p, double x) noexcept;
/// Throws DomainError for u outside (0, 1).
double su_quantile(const JohnsonSUParams& p, double u);

/// Fills `out` with independent draws, consuming normals from `rng`.
void su_sample(const JohnsonSUParams& p, std::span<double> out, Stream& rng);
Sample su_sample(const JohnsonSUParams& p, std::size_t count, Stream& rng);

/// Closed-form median, mean, sd and skewness (in w = exp(1/delta^2) and
/// Omega = gamma/delta). Non-finite when w overflows.
DistributionMoments su_analytic_moments(const JohnsonSUParams& p) noexcept;

}  // namespace rro::dist
