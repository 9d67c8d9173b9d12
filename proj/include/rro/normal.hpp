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

#include <optional>
#include <string_view>

#include "rro/rank_stats.hpp"

namespace rro {

enum class Tail { left, right, two };

std::string_view to_string(Tail tail) noexcept;
std::optional<Tail> parse_tail(std::string_view text) noexcept;

/// min(2 * min(left, right), 1)
double two_tailed(double p_left, double p_right) noexcept;

double normal_cdf(double z) noexcept;
/// Upper tail 1 - Phi(z), computed without cancellation.
double normal_sf(double z) noexcept;
/// Inverse of normal_cdf on (0, 1); throws DomainError outside.
double normal_quantile(double u);

/// Standard-normal tail probability of the statistic. A degenerate -inf has
/// left p of 0 (and right p of 1); +inf mirrors it.
double normal_pvalue(const RROStatistic& stat, Tail tail) noexcept;
double normal_pvalue(double stat, Tail tail) noexcept;

}  // namespace rro
