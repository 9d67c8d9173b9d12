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

#include <cstdint>
#include <span>
#include <vector>

#include "rro/sample.hpp"

namespace rro {

/// Placements of one sample among another: for each a_i the number of b_j
/// strictly below it, with ties counted as one half.
struct PlacementSummary {
    std::vector<double> placements;
    double mean_placement = 0.0;
    double variability_index = 0.0;  // sum of squared deviations from the mean
};

PlacementSummary placements(const Sample& a, const Sample& b);

/// Robust rank-order statistic. `degenerate` marks complete separation of the
/// two samples, where the studentizing denominator is zero and `value` is
/// +inf or -inf following the sign of the numerator.
struct RROStatistic {
    double value = 0.0;
    bool degenerate = false;
};

RROStatistic rro_statistic(const Sample& x, const Sample& y);

/// Hodges-Lehmann shift: median of all m*n differences y_j - x_i.
double hodges_lehmann_shift(const Sample& x, const Sample& y);

/// Y - shift, so that the aligned sample has the central tendency of X.
Sample align_samples(const Sample& x, const Sample& y);

namespace detail {

/// Integer sufficient statistics of the two placement vectors. Placements are
/// stored doubled (2 * #less + #equal) so tie half-counts stay integral.
struct PlacementSums {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t sum_x = 0;     // sum of doubled X placements
    std::int64_t sumsq_x = 0;   // sum of squared doubled X placements
    std::int64_t sum_y = 0;
    std::int64_t sumsq_y = 0;
};

/// Placement sums for two ascending ranges; O(m + n), no allocation.
PlacementSums placement_sums_sorted(std::span<const double> xs, std::span<const double> ys);

/// The statistic as a function of the placement sums. Every code path
/// (samples, Monte-Carlo kernels, exact enumeration) funnels through here, so
/// identical interleavings give bitwise identical values.
RROStatistic statistic_from_sums(const PlacementSums& s);

/// k-th smallest (0-based) computed difference ys[j] - xs[i] over ascending
/// ranges, found by bisection on the ordering of doubles.
double kth_pairwise_difference(std::span<const double> xs, std::span<const double> ys,
                               std::uint64_t k);

}  // namespace detail
}  // namespace rro
