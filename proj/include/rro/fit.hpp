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

#include <cstddef>

#include "rro/family.hpp"
#include "rro/sample.hpp"

namespace rro::dist {

double log_likelihood(const DistributionFamily& family, std::span<const double> params,
                      const Sample& data);

struct FitOptions {
    double tolerance = 1e-8;
    std::size_t max_evaluations = 1000000;
};

struct FitResult {
    ParamVector params;
    double log_likelihood = 0.0;
    ParamVector start;
    double start_log_likelihood = 0.0;
    std::size_t evaluations = 0;
};

/// Maximum-likelihood fit. The data are standardized by median and sd, the
/// search starts from the family's moment-matched guess and runs compass
/// search on the negative log-likelihood, and the optimum is mapped back to
/// data units (the likelihood is equivariant under location-scale maps).
/// Throws FitError, carrying the best point and its log-likelihood in data
/// units, when the search does not converge; DomainError for data smaller than
/// the parameter count or with zero spread.
FitResult fit_mle(const DistributionFamily& family, const Sample& data, FitOptions options = {});

struct MomentMatchResult {
    ParamVector params;
    double residual = 0.0;  // L2 norm of (median, sd, skewness) errors
    std::size_t evaluations = 0;
};

inline constexpr double kMomentMatchTolerance = 1e-4;

/// Parameters whose analytic (median, sd, skewness) match `spec`. The search
/// runs in standardized units (median 0, sd 1) from the family's fixed start,
/// minimizing the unweighted sum of squared moment errors, and is then mapped
/// to the requested median and sd. Throws FitError with the residual in
/// best_value() when the residual exceeds `tolerance`.
MomentMatchResult moment_match(const DistributionFamily& family, const MomentSpec& spec,
                               double tolerance = kMomentMatchTolerance);

/// Convenience overload for the S_U family.
JohnsonSUParams moment_match_su(const MomentSpec& spec, bool strict_gamma = false);

}  // namespace rro::dist
