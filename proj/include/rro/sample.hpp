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
#include <initializer_list>
#include <span>
#include <vector>

namespace rro {

/// An ordered collection of finite observations with at least two elements.
///
/// Construction validates the invariants and throws DomainError otherwise,
/// so every Sample that exists is usable by the rank statistics.
class Sample {
public:
    static constexpr std::size_t kMinSize = 2;

    explicit Sample(std::vector<double> values);
    Sample(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    const double& operator[](std::size_t i) const noexcept { return values_[i]; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    /// Order-statistic median; mean of the two central values for even size.
    double median() const;

    /// Copy of the values in ascending order.
    std::vector<double> sorted() const;

    /// Elementwise x + offset.
    Sample shifted(double offset) const;

    bool operator==(const Sample&) const = default;

private:
    std::vector<double> values_;
};

/// Median of an arbitrary non-empty range (copied, not modified).
double median_of(std::span<const double> values);

/// Sample moments used for summaries and moment-matched starting points.
struct SampleMoments {
    double mean;
    double median;
    double sd;        // n-1 denominator
    double skewness;  // g1 = m3 / m2^{3/2} with population central moments
};

SampleMoments sample_moments(std::span<const double> values);

}  // namespace rro
