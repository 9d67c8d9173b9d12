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

#include "rro/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rro/errors.hpp"

namespace rro {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < kMinSize) {
        throw DomainError("sample needs at least " + std::to_string(kMinSize) +
                          " values, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("sample value at index " + std::to_string(i) + " is not finite");
        }
    }
}

Sample::Sample(std::initializer_list<double> values)
    : Sample(std::vector<double>(values)) {}

double Sample::median() const { return median_of(values_); }

std::vector<double> Sample::sorted() const {
    std::vector<double> out(values_);
    std::sort(out.begin(), out.end());
    return out;
}

Sample Sample::shifted(double offset) const {
    std::vector<double> out(values_);
    for (double& v : out) v += offset;
    return Sample(std::move(out));
}

double median_of(std::span<const double> values) {
    if (values.empty()) throw DomainError("median of an empty range");
    std::vector<double> buf(values.begin(), values.end());
    const std::size_t n = buf.size();
    const std::size_t mid = n / 2;
    std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
    const double upper = buf[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(buf.begin(), buf.begin() + mid);
    return 0.5 * (lower + upper);
}

SampleMoments sample_moments(std::span<const double> values) {
    if (values.size() < 2) throw DomainError("moments need at least two values");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    const double sd = std::sqrt(m2 / (n - 1.0));
    m2 /= n;
    m3 /= n;
    const double skew = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    return {mean, median_of(values), sd, skew};
}

}  // namespace rro
