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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rro/normal.hpp"

namespace rro {

enum class Provenance { exact, monte_carlo };

std::string_view to_string(Provenance p) noexcept;

/// Multiset of null statistic values (extended reals, +/-inf allowed).
/// Values are kept sorted so tail counts are logarithmic.
class NullDistribution {
public:
    static NullDistribution exact(std::vector<double> values);
    static NullDistribution monte_carlo(std::vector<double> values, std::uint64_t seed);

    std::size_t cardinality() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    Provenance provenance() const noexcept { return provenance_; }
    /// Master seed; present only for monte_carlo provenance.
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

    std::size_t count_at_most(double v) const noexcept;
    std::size_t count_at_least(double v) const noexcept;

    NullDistribution negated() const;

private:
    NullDistribution(std::vector<double> values, Provenance provenance,
                     std::optional<std::uint64_t> seed);

    std::vector<double> values_;
    Provenance provenance_;
    std::optional<std::uint64_t> seed_;
};

enum class PValueEstimator {
    plain,     // k / B
    smoothed,  // (k + 1) / (B + 1)
};

struct TailPValues {
    double left = 1.0;
    double right = 1.0;
    double two = 1.0;

    double get(Tail tail) const noexcept;
};

/// Tail p-values from counts of null values at most / at least the observed
/// statistic out of `total` (> 0).
TailPValues tail_pvalues(std::size_t at_most, std::size_t at_least, std::size_t total,
                         PValueEstimator estimator = PValueEstimator::plain) noexcept;

/// Tail proportions of the observed statistic within the null multiset.
/// Both tails include equality, so left + right >= 1 for the plain estimator.
TailPValues mc_pvalues(const NullDistribution& xi, double observed,
                       PValueEstimator estimator = PValueEstimator::plain) noexcept;

double mc_pvalue(const NullDistribution& xi, double observed, Tail tail,
                 PValueEstimator estimator = PValueEstimator::plain) noexcept;

struct CriticalValues {
    std::optional<double> left;
    std::optional<double> right;
};

/// Critical values over the distinct support of the null: the right value is
/// the smallest support point whose upper tail proportion is <= p (left is the
/// mirror). Two-tailed splits p evenly. A side is empty when no support point
/// meets the bound. Only the sides implied by `tail` are filled.
CriticalValues critical_values(const NullDistribution& xi, double p, Tail tail);

}  // namespace rro
