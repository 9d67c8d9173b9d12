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

#include "rro/mc_engine.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "rro/errors.hpp"
#include "rro/random.hpp"

namespace rro {

namespace {

struct ReplicateBuffers {
    std::vector<double> xs;
    std::vector<double> ys;
};

double replicate_into(ReplicateBuffers& buf, const dist::DistributionFamily& family,
                      std::span<const double> params_x, std::span<const double> params_y,
                      std::uint64_t seed, std::uint64_t index) {
    Stream rng(derive_seed(seed, {index}));
    family.sample(params_x, buf.xs, rng);
    family.sample(params_y, buf.ys, rng);
    std::sort(buf.xs.begin(), buf.xs.end());
    std::sort(buf.ys.begin(), buf.ys.end());
    return detail::statistic_from_sums(detail::placement_sums_sorted(buf.xs, buf.ys)).value;
}

void check_inputs(const dist::DistributionFamily& family, std::span<const double> params_x,
                  std::span<const double> params_y, std::size_t m, std::size_t n) {
    if (m < 2 || n < 2) throw DomainError("Monte-Carlo null needs sample sizes of at least 2");
    if (!family.admits(params_x)) {
        throw DomainError("parameters for X are not admitted by " + family.name());
    }
    if (!family.admits(params_y)) {
        throw DomainError("parameters for Y are not admitted by " + family.name());
    }
}

}  // namespace

double mc_replicate(const dist::DistributionFamily& family, std::span<const double> params_x,
                    std::span<const double> params_y, std::size_t m, std::size_t n,
                    std::uint64_t seed, std::uint64_t index) {
    check_inputs(family, params_x, params_y, m, n);
    ReplicateBuffers buf{std::vector<double>(m), std::vector<double>(n)};
    return replicate_into(buf, family, params_x, params_y, seed, index);
}

std::vector<double> mc_replicates(const dist::DistributionFamily& family,
                                  std::span<const double> params_x,
                                  std::span<const double> params_y, std::size_t m, std::size_t n,
                                  std::size_t replicates, std::uint64_t seed, unsigned workers) {
    check_inputs(family, params_x, params_y, m, n);
    std::vector<double> values(replicates);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(replicates, 1)));

    const auto run = [&](std::size_t begin, std::size_t end) {
        ReplicateBuffers buf{std::vector<double>(m), std::vector<double>(n)};
        for (std::size_t i = begin; i < end; ++i) {
            values[i] = replicate_into(buf, family, params_x, params_y, seed, i);
        }
    };
    if (workers <= 1) {
        run(0, replicates);
        return values;
    }

    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t chunk = (replicates + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(replicates, w * chunk);
        const std::size_t end = std::min(replicates, begin + chunk);
        threads.emplace_back([&, begin, end] {
            try {
                run(begin, end);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    return values;
}

NullDistribution mc_null(const dist::DistributionFamily& family, std::span<const double> params_x,
                         std::span<const double> params_y_aligned, std::size_t m, std::size_t n,
                         std::size_t replicates, std::uint64_t seed, unsigned workers) {
    if (replicates < kMinReplicates) {
        throw DomainError("Monte-Carlo null needs at least " + std::to_string(kMinReplicates) +
                          " replicates");
    }
    return NullDistribution::monte_carlo(
        mc_replicates(family, params_x, params_y_aligned, m, n, replicates, seed, workers), seed);
}

NullDistribution mc_null(const dist::JohnsonSUParams& params_x,
                         const dist::JohnsonSUParams& params_y_aligned, std::size_t m,
                         std::size_t n, std::size_t replicates, std::uint64_t seed,
                         unsigned workers) {
    const dist::JohnsonSUFamily family;
    const auto px = params_x.to_array();
    const auto py = params_y_aligned.to_array();
    return mc_null(family, px, py, m, n, replicates, seed, workers);
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::mc:
            return "mc";
        case Method::normal:
            return "normal";
        case Method::exact:
            return "exact";
    }
    return "unknown";
}

double TestResult::p_value(Tail t) const noexcept {
    switch (t) {
        case Tail::left:
            return p_left;
        case Tail::right:
            return p_right;
        case Tail::two:
            return p_two;
    }
    return p_two;
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

TestResult refer_to_null(const RROStatistic& stat, const NullDistribution& xi, double alpha,
                         Tail tail, PValueEstimator estimator) {
    TestResult out;
    out.statistic = stat;
    const TailPValues p = mc_pvalues(xi, stat.value, estimator);
    out.p_left = p.left;
    out.p_right = p.right;
    out.p_two = p.two;
    const CriticalValues crit = critical_values(xi, alpha, tail);
    out.critical_left = crit.left;
    out.critical_right = crit.right;
    out.alpha = alpha;
    out.tail = tail;
    out.null_cardinality = xi.cardinality();
    return out;
}

dist::FitResult fit_or_explain(const dist::DistributionFamily& family, const Sample& data,
                               const dist::FitOptions& options, const char* which) {
    try {
        return dist::fit_mle(family, data, options);
    } catch (const FitError& e) {
        throw FitError(std::string("fit of ") + which + " failed: " + e.what(), e.best_point(),
                       e.best_value(), e.evaluations());
    }
}

}  // namespace

ParentFits fit_parents(const Sample& x, const Sample& y, const dist::DistributionFamily& family,
                       const dist::FitOptions& options) {
    const double shift = hodges_lehmann_shift(x, y);
    const Sample y_aligned = y.shifted(-shift);
    dist::FitResult fit_x = fit_or_explain(family, x, options, "sample X");
    dist::FitResult fit_y = fit_or_explain(family, y_aligned, options, "aligned sample Y");
    return ParentFits{family.name(),        std::move(fit_x.params), std::move(fit_y.params),
                      shift,                fit_x.log_likelihood,    fit_y.log_likelihood};
}

TestResult rro_mc_test(const Sample& x, const Sample& y, const dist::DistributionFamily& family,
                       const McTestOptions& options, double alpha, Tail tail) {
    check_alpha(alpha);
    ParentFits fits = fit_parents(x, y, family, options.fit);
    const NullDistribution xi = mc_null(family, fits.params_x, fits.params_y_aligned, x.size(),
                                        y.size(), options.replicates, options.seed,
                                        options.workers);
    TestResult out = refer_to_null(rro_statistic(x, y), xi, alpha, tail, options.estimator);
    out.method = Method::mc;
    out.seed = options.seed;
    out.fits = std::move(fits);
    return out;
}

TestResult rro_normal_test(const Sample& x, const Sample& y, double alpha, Tail tail) {
    check_alpha(alpha);
    TestResult out;
    out.statistic = rro_statistic(x, y);
    out.p_left = normal_pvalue(out.statistic, Tail::left);
    out.p_right = normal_pvalue(out.statistic, Tail::right);
    out.p_two = normal_pvalue(out.statistic, Tail::two);
    const double q = normal_quantile(1.0 - (tail == Tail::two ? alpha / 2.0 : alpha));
    if (tail != Tail::right) out.critical_left = -q;
    if (tail != Tail::left) out.critical_right = q;
    out.method = Method::normal;
    out.alpha = alpha;
    out.tail = tail;
    return out;
}

TestResult rro_exact_test(const Sample& x, const Sample& y, double alpha, Tail tail, double cap) {
    check_alpha(alpha);
    const NullDistribution xi = exact_null_distribution(x.size(), y.size(), cap);
    TestResult out = refer_to_null(rro_statistic(x, y), xi, alpha, tail, PValueEstimator::plain);
    out.method = Method::exact;
    return out;
}

}  // namespace rro
