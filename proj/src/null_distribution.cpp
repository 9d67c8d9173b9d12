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

#include "rro/null_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rro/errors.hpp"

namespace rro {

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::exact ? "exact" : "monte_carlo";
}

NullDistribution::NullDistribution(std::vector<double> values, Provenance provenance,
                                   std::optional<std::uint64_t> seed)
    : values_(std::move(values)), provenance_(provenance), seed_(seed) {
    if (values_.empty()) throw DomainError("null distribution must not be empty");
    for (double v : values_) {
        if (std::isnan(v)) throw DomainError("null distribution contains NaN");
    }
    std::sort(values_.begin(), values_.end());
}

NullDistribution NullDistribution::exact(std::vector<double> values) {
    return NullDistribution(std::move(values), Provenance::exact, std::nullopt);
}

NullDistribution NullDistribution::monte_carlo(std::vector<double> values, std::uint64_t seed) {
    return NullDistribution(std::move(values), Provenance::monte_carlo, seed);
}

std::size_t NullDistribution::count_at_most(double v) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), v) -
                                    values_.begin());
}

std::size_t NullDistribution::count_at_least(double v) const noexcept {
    return static_cast<std::size_t>(values_.end() -
                                    std::lower_bound(values_.begin(), values_.end(), v));
}

NullDistribution NullDistribution::negated() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return -v; });
    return NullDistribution(std::move(out), provenance_, seed_);
}

double TailPValues::get(Tail tail) const noexcept {
    switch (tail) {
        case Tail::left: return left;
        case Tail::right: return right;
        case Tail::two: return two;
    }
    return two;
}

TailPValues tail_pvalues(std::size_t at_most, std::size_t at_least, std::size_t total,
                         PValueEstimator estimator) noexcept {
    const auto b = static_cast<double>(total);
    const auto le = static_cast<double>(at_most);
    const auto ge = static_cast<double>(at_least);
    TailPValues p;
    if (estimator == PValueEstimator::smoothed) {
        p.left = (le + 1.0) / (b + 1.0);
        p.right = (ge + 1.0) / (b + 1.0);
    } else {
        p.left = le / b;
        p.right = ge / b;
    }
    p.two = two_tailed(p.left, p.right);
    return p;
}

TailPValues mc_pvalues(const NullDistribution& xi, double observed,
                       PValueEstimator estimator) noexcept {
    return tail_pvalues(xi.count_at_most(observed), xi.count_at_least(observed),
                        xi.cardinality(), estimator);
}

double mc_pvalue(const NullDistribution& xi, double observed, Tail tail,
                 PValueEstimator estimator) noexcept {
    return mc_pvalues(xi, observed, estimator).get(tail);
}

namespace {

// Largest tail count allowed at level q, with slack for q * N landing a hair
// below an integer.
std::size_t allowed_count(double q, std::size_t total) {
    const double c = std::floor(q * static_cast<double>(total) + 1e-9);
    if (c <= 0.0) return 0;
    return std::min(total, static_cast<std::size_t>(c));
}

std::optional<double> right_critical(std::span<const double> v, double q) {
    const std::size_t total = v.size();
    const std::size_t k = total - allowed_count(q, total);
    // smallest support point strictly above v[k-1]
    const std::size_t j =
        k == 0 ? 0
               : static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), v[k - 1]) -
                                          v.begin());
    if (j >= total) return std::nullopt;
    return v[j];
}

std::optional<double> left_critical(std::span<const double> v, double q) {
    const std::size_t total = v.size();
    const std::size_t c = allowed_count(q, total);
    // largest support point strictly below v[c]
    const std::size_t r =
        c >= total ? total
                   : static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), v[c]) -
                                              v.begin());
    if (r == 0) return std::nullopt;
    return v[r - 1];
}

}  // namespace

CriticalValues critical_values(const NullDistribution& xi, double p, Tail tail) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("critical values need p in (0, 1), got " + std::to_string(p));
    }
    CriticalValues out;
    switch (tail) {
        case Tail::left: out.left = left_critical(xi.values(), p); break;
        case Tail::right: out.right = right_critical(xi.values(), p); break;
        case Tail::two:
            out.left = left_critical(xi.values(), p / 2.0);
            out.right = right_critical(xi.values(), p / 2.0);
            break;
    }
    return out;
}

}  // namespace rro
