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

#include "rro/normal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "rro/errors.hpp"

namespace rro {

std::string_view to_string(Tail tail) noexcept {
    switch (tail) {
        case Tail::left: return "left";
        case Tail::right: return "right";
        case Tail::two: return "two";
    }
    return "two";
}

std::optional<Tail> parse_tail(std::string_view text) noexcept {
    if (text == "left") return Tail::left;
    if (text == "right") return Tail::right;
    if (text == "two") return Tail::two;
    return std::nullopt;
}

double two_tailed(double p_left, double p_right) noexcept {
    return std::min(2.0 * std::min(p_left, p_right), 1.0);
}

double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_sf(double z) noexcept {
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("normal quantile needs u in (0, 1), got " + std::to_string(u));
    }
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double normal_pvalue(double stat, Tail tail) noexcept {
    const double left = normal_cdf(stat);
    const double right = normal_sf(stat);
    switch (tail) {
        case Tail::left: return left;
        case Tail::right: return right;
        case Tail::two: return two_tailed(left, right);
    }
    return 1.0;
}

double normal_pvalue(const RROStatistic& stat, Tail tail) noexcept {
    return normal_pvalue(stat.value, tail);
}

}  // namespace rro
