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
#include <utility>
#include <vector>

#include "rro/johnson_su.hpp"
#include "rro/mc_engine.hpp"
#include "rro/sample.hpp"

namespace rro::sim {

/// Cliff's dominance effect size (#(s2 > s1) - #(s2 < s1)) / (m n).
double cliff_d(const Sample& s1, const Sample& s2);
/// Same on ascending ranges, with `shift` added to every element of s2.
double cliff_d_sorted(std::span<const double> s1, std::span<const double> s2, double shift = 0.0);

inline constexpr std::size_t kCalibrationSampleSize = 10000;
inline constexpr double kCalibrationTolerance = 1e-3;

/// Shift of the second sample's median that gives Cliff's d equal to
/// `d_target` between two reference samples of the parent. The reference
/// samples are quantile-stratified draws (one uniform per stratum of width
/// 1/size), searched with compass search under shift >= 0.
/// Throws DomainError unless 0 < d_target < 1 and CalibrationError when the
/// residual in d exceeds kCalibrationTolerance.
double shift_for_effect_size(const dist::JohnsonSUParams& params, double d_target,
                             std::uint64_t seed,
                             std::size_t reference_size = kCalibrationSampleSize);

/// (#(p < alpha) / #p - alpha) * 100. Throws DomainError for an empty set or
/// p-values outside [0, 1].
double excess_type1(std::span<const double> p_values, double alpha);
/// #(p < alpha) / #p * 100.
double power(std::span<const double> p_values, double alpha);

struct Band {
    double low = 0.0;
    double high = 0.0;
};

/// Two-sided acceptance region of the rejection count under
/// Binomial(trials, alpha) at `test_level`, as excess type-1 error in percent.
/// Throws DomainError for trials < 100.
Band binomial_band(std::size_t trials, double alpha, double test_level = 0.01);

enum class Skew { left, right };
std::string_view to_string(Skew skew) noexcept;

/// A parent given by target moments or by explicit parameters; with
/// `dispersion_doubled` the resolved parent is mapped to 2X.
struct ParentSpec {
    std::optional<dist::MomentSpec> moments;
    std::optional<dist::JohnsonSUParams> params;
    bool dispersion_doubled = false;
};

dist::JohnsonSUParams resolve(const ParentSpec& spec);

inline constexpr double kSignificanceTestLevel = 0.01;

struct SimulationConfig {
    std::string set_id;  // "1", "2", "3a", "3b", "4" ... "8"
    Skew skew = Skew::left;
    ParentSpec parent_1;
    ParentSpec parent_2;
    std::vector<std::pair<std::size_t, std::size_t>> size_pairs;
    std::size_t pair_count = 5000;
    std::size_t mc_replicates = kDefaultReplicates;
    /// Replicate counts evaluated as nested prefixes of one stream per pair;
    /// empty means just mc_replicates.
    std::vector<std::size_t> mc_sweep;
    std::vector<double> alphas;
    /// Cliff's d between the parents; the second parent is shifted to match.
    std::optional<double> effect_size_target;
    Tail tail = Tail::two;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
    bool retain_p_values = false;
};

/// 0.01, 0.02, ..., 0.10.
std::vector<double> default_alphas();

/// Check the invariants of a configuration; throws DomainError.
void validate(const SimulationConfig& config);

struct MetricRow {
    std::size_t m = 0;
    std::size_t n = 0;
    Method method = Method::mc;
    std::size_t mc_replicates = 0;  // 0 for the normal backend
    double alpha = 0.0;
    std::string metric_name;  // excess_type1_percent or power_percent
    double metric_value = 0.0;
    Band band;  // in the metric's units
    std::size_t rejections = 0;
};

struct RetainedPValues {
    std::size_t m = 0;
    std::size_t n = 0;
    Method method = Method::mc;
    std::size_t mc_replicates = 0;
    std::vector<double> p_values;  // replicate order
};

struct SimulationResult {
    SimulationConfig config;
    dist::JohnsonSUParams parent_1;
    dist::JohnsonSUParams parent_2;
    std::optional<double> median_shift;  // calibrated shift for effect-size runs
    std::vector<MetricRow> rows;
    std::vector<RetainedPValues> p_values;

    /// Row lookup; nullptr when absent. `mc_replicates` is ignored for the
    /// normal backend and 0 selects the configured count.
    const MetricRow* find(std::size_t m, std::size_t n, Method method, double alpha,
                          std::size_t mc_replicates = 0) const;
};

/// Runs every size pair of the configuration: for each replicate draws the
/// pair from the parents, runs the Monte-Carlo and the normal backends and
/// aggregates rejection counts. Each replicate seeds from (master seed, set,
/// skew, size-pair index, replicate index), so results do not depend on
/// `workers`. Fit and calibration failures propagate with the replicate named.
SimulationResult run_simulation_set(const SimulationConfig& config);

/// Set codes accepted by preset_configs.
const std::vector<std::string>& preset_set_ids();

/// Preset configurations for one set of the study, one per skew direction
/// (sets 4-7 have one direction only). Throws DomainError for unknown ids.
std::vector<SimulationConfig> preset_configs(std::string_view set_id, std::size_t pair_count,
                                             std::size_t mc_replicates,
                                             std::uint64_t master_seed);

}  // namespace rro::sim
