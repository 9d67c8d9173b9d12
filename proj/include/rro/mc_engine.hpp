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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rro/exact_null.hpp"
#include "rro/family.hpp"
#include "rro/fit.hpp"
#include "rro/null_distribution.hpp"
#include "rro/rank_stats.hpp"
#include "rro/sample.hpp"

namespace rro {

inline constexpr std::size_t kDefaultReplicates = 10000;
inline constexpr std::size_t kMinReplicates = 100;

/// Statistic of replicate `index` for sizes (m, n) drawn from the two parents.
/// Replicate i always uses the stream derive_seed(seed, {i}), so any prefix of
/// the replicate sequence is itself a valid Monte-Carlo null.
double mc_replicate(const dist::DistributionFamily& family, std::span<const double> params_x,
                    std::span<const double> params_y, std::size_t m, std::size_t n,
                    std::uint64_t seed, std::uint64_t index);

/// Replicate statistics in index order, spread over `workers` threads
/// (0 means one per hardware thread). The result does not depend on `workers`.
std::vector<double> mc_replicates(const dist::DistributionFamily& family,
                                  std::span<const double> params_x,
                                  std::span<const double> params_y, std::size_t m, std::size_t n,
                                  std::size_t replicates, std::uint64_t seed,
                                  unsigned workers = 1);

/// Monte-Carlo null of the statistic for samples of sizes (m, n) drawn from
/// the fitted parents. Throws DomainError for replicates < kMinReplicates,
/// sizes < 2 or parameters the family does not admit.
NullDistribution mc_null(const dist::DistributionFamily& family, std::span<const double> params_x,
                         std::span<const double> params_y_aligned, std::size_t m, std::size_t n,
                         std::size_t replicates, std::uint64_t seed, unsigned workers = 1);

NullDistribution mc_null(const dist::JohnsonSUParams& params_x,
                         const dist::JohnsonSUParams& params_y_aligned, std::size_t m,
                         std::size_t n, std::size_t replicates, std::uint64_t seed,
                         unsigned workers = 1);

enum class Method { mc, normal, exact };

std::string_view to_string(Method method) noexcept;

/// Fitted parents behind a Monte-Carlo test.
struct ParentFits {
    std::string family;
    dist::ParamVector params_x;
    dist::ParamVector params_y_aligned;
    double shift = 0.0;  // Hodges-Lehmann shift removed from Y before fitting
    double log_likelihood_x = 0.0;
    double log_likelihood_y = 0.0;
};

struct TestResult {
    RROStatistic statistic;
    double p_left = 1.0;
    double p_right = 1.0;
    double p_two = 1.0;
    std::optional<double> critical_left;
    std::optional<double> critical_right;
    Method method = Method::normal;
    double alpha = 0.05;
    Tail tail = Tail::two;
    std::size_t null_cardinality = 0;  // 0 for the normal backend
    std::optional<std::uint64_t> seed;
    std::optional<ParentFits> fits;

    double p_value() const noexcept { return p_value(tail); }
    double p_value(Tail t) const noexcept;
    bool rejects() const noexcept { return p_value() < alpha; }
};

/// Align Y on X by the Hodges-Lehmann shift and fit the family to X and to
/// the aligned Y. Throws FitError naming the sample whose fit failed.
ParentFits fit_parents(const Sample& x, const Sample& y, const dist::DistributionFamily& family,
                       const dist::FitOptions& options = {});

struct McTestOptions {
    std::size_t replicates = kDefaultReplicates;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    PValueEstimator estimator = PValueEstimator::plain;
    dist::FitOptions fit;
};

/// Monte-Carlo test: fit_parents, build the null at sizes (m, n) from the two
/// fits and refer the statistic of the original, unaligned samples to it.
TestResult rro_mc_test(const Sample& x, const Sample& y, const dist::DistributionFamily& family,
                       const McTestOptions& options, double alpha, Tail tail);

/// Statistic referred to the standard normal.
TestResult rro_normal_test(const Sample& x, const Sample& y, double alpha, Tail tail);

/// Statistic referred to the exact permutation null.
/// Throws EnumerationCapExceeded above `cap` interleavings.
TestResult rro_exact_test(const Sample& x, const Sample& y, double alpha, Tail tail,
                          double cap = kDefaultEnumerationCap);

}  // namespace rro
