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

#include "rro/exact_null.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "rro/errors.hpp"
#include "rro/rank_stats.hpp"

namespace rro {

double interleaving_count(std::size_t m, std::size_t n) noexcept {
    const std::size_t k = std::min(m, n);
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(m + n - k + i) / static_cast<double>(i);
    }
    return c;
}

namespace {

// Sums for one pattern; x_positions ascending over [0, m + n).
detail::PlacementSums pattern_sums(const std::vector<std::size_t>& x_positions, std::size_t total) {
    detail::PlacementSums s;
    s.m = static_cast<std::int64_t>(x_positions.size());
    s.n = static_cast<std::int64_t>(total - x_positions.size());
    std::size_t next = 0;
    std::int64_t xs_seen = 0;
    std::int64_t ys_seen = 0;
    for (std::size_t pos = 0; pos < total; ++pos) {
        if (next < x_positions.size() && x_positions[next] == pos) {
            const std::int64_t p = 2 * ys_seen;
            s.sum_x += p;
            s.sumsq_x += p * p;
            ++xs_seen;
            ++next;
        } else {
            const std::int64_t p = 2 * xs_seen;
            s.sum_y += p;
            s.sumsq_y += p * p;
            ++ys_seen;
        }
    }
    return s;
}

// Lexicographic successor of a k-combination of [0, total); false at the end.
bool next_combination(std::vector<std::size_t>& c, std::size_t total) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (c[i] < total - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

NullDistribution exact_null_distribution(std::size_t m, std::size_t n, double cap) {
    if (m == 0 || n == 0) throw DomainError("exact null needs positive sample sizes");
    const double patterns = interleaving_count(m, n);
    if (patterns > cap) {
        std::ostringstream msg;
        msg << "exact enumeration of C(" << m + n << ", " << m << ") = " << patterns
            << " interleavings exceeds the cap of " << cap << "; use the Monte-Carlo backend";
        throw EnumerationCapExceeded(msg.str(), patterns, cap);
    }
    const std::size_t total = m + n;
    std::vector<std::size_t> x_positions(m);
    std::iota(x_positions.begin(), x_positions.end(), std::size_t{0});

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(patterns));
    do {
        values.push_back(detail::statistic_from_sums(pattern_sums(x_positions, total)).value);
    } while (next_combination(x_positions, total));
    return NullDistribution::exact(std::move(values));
}

}  // namespace rro
