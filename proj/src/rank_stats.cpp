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

#include "rro/rank_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace rro {

namespace {

// Doubled placement of v among an ascending range: 2 * #less + #equal.
std::int64_t doubled_placement(double v, std::span<const double> sorted) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v);
    const auto hi = std::upper_bound(lo, sorted.end(), v);
    return 2 * (lo - sorted.begin()) + (hi - lo);
}

// Monotone map from doubles to unsigned keys: a < b  <=>  key(a) < key(b).
std::uint64_t order_key(double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    return (bits & 0x8000000000000000ULL) ? ~bits : bits | 0x8000000000000000ULL;
}

double from_order_key(std::uint64_t key) {
    const std::uint64_t bits =
        (key & 0x8000000000000000ULL) ? key & ~0x8000000000000000ULL : ~key;
    return std::bit_cast<double>(bits);
}

std::uint64_t count_differences_at_most(std::span<const double> xs, std::span<const double> ys,
                                        double t) {
    std::uint64_t count = 0;
    std::size_t i = 0;
    const std::size_t m = xs.size();
    for (double y : ys) {
        while (i < m && y - xs[i] > t) ++i;
        count += m - i;
    }
    return count;
}

}  // namespace

PlacementSummary placements(const Sample& a, const Sample& b) {
    const std::vector<double> sorted_b = b.sorted();
    PlacementSummary out;
    out.placements.reserve(a.size());
    double total = 0.0;
    for (double v : a) {
        const double p = 0.5 * static_cast<double>(doubled_placement(v, sorted_b));
        out.placements.push_back(p);
        total += p;
    }
    out.mean_placement = total / static_cast<double>(a.size());
    double ss = 0.0;
    for (double p : out.placements) {
        const double d = p - out.mean_placement;
        ss += d * d;
    }
    out.variability_index = ss;
    return out;
}

RROStatistic rro_statistic(const Sample& x, const Sample& y) {
    const std::vector<double> xs = x.sorted();
    const std::vector<double> ys = y.sorted();
    return detail::statistic_from_sums(detail::placement_sums_sorted(xs, ys));
}

double hodges_lehmann_shift(const Sample& x, const Sample& y) {
    const std::vector<double> xs = x.sorted();
    const std::vector<double> ys = y.sorted();
    const std::uint64_t total = static_cast<std::uint64_t>(xs.size()) * ys.size();
    const std::uint64_t mid = total / 2;
    const double upper = detail::kth_pairwise_difference(xs, ys, mid);
    if (total % 2 == 1) return upper;
    const double lower = detail::kth_pairwise_difference(xs, ys, mid - 1);
    return 0.5 * (lower + upper);
}

Sample align_samples(const Sample& x, const Sample& y) {
    return y.shifted(-hodges_lehmann_shift(x, y));
}

namespace detail {

PlacementSums placement_sums_sorted(std::span<const double> xs, std::span<const double> ys) {
    PlacementSums s;
    s.m = static_cast<std::int64_t>(xs.size());
    s.n = static_cast<std::int64_t>(ys.size());

    // X among Y
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (double v : xs) {
        while (lo < ys.size() && ys[lo] < v) ++lo;
        if (hi < lo) hi = lo;
        while (hi < ys.size() && ys[hi] <= v) ++hi;
        const auto p = static_cast<std::int64_t>(2 * lo + (hi - lo));
        s.sum_x += p;
        s.sumsq_x += p * p;
    }
    // Y among X
    lo = 0;
    hi = 0;
    for (double v : ys) {
        while (lo < xs.size() && xs[lo] < v) ++lo;
        if (hi < lo) hi = lo;
        while (hi < xs.size() && xs[hi] <= v) ++hi;
        const auto p = static_cast<std::int64_t>(2 * lo + (hi - lo));
        s.sum_y += p;
        s.sumsq_y += p * p;
    }
    return s;
}

RROStatistic statistic_from_sums(const PlacementSums& s) {
    __extension__ typedef __int128 wide;
    // 4mn * (V_x + V_y + mean_x * mean_y), exact in integers.
    const wide dev_x = static_cast<wide>(s.m) * s.sumsq_x - static_cast<wide>(s.sum_x) * s.sum_x;
    const wide dev_y = static_cast<wide>(s.n) * s.sumsq_y - static_cast<wide>(s.sum_y) * s.sum_y;
    const wide radicand =
        static_cast<wide>(s.n) * dev_x + static_cast<wide>(s.m) * dev_y +
        static_cast<wide>(s.sum_x) * s.sum_y;
    const double numerator = static_cast<double>(s.sum_x - s.sum_y);
    if (radicand == 0) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {numerator > 0.0 ? inf : -inf, true};
    }
    const double mn = static_cast<double>(s.m) * static_cast<double>(s.n);
    const double denominator = 2.0 * std::sqrt(static_cast<double>(radicand) / mn);
    return {numerator / denominator, false};
}

double kth_pairwise_difference(std::span<const double> xs, std::span<const double> ys,
                               std::uint64_t k) {
    std::uint64_t lo = order_key(ys.front() - xs.back());
    std::uint64_t hi = order_key(ys.back() - xs.front());
    // smallest t with #(d <= t) >= k + 1
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (count_differences_at_most(xs, ys, from_order_key(mid)) >= k + 1) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return from_order_key(lo);
}

}  // namespace detail
}  // namespace rro
