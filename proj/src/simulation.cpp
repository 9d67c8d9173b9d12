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

#include "rro/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "rro/errors.hpp"
#include "rro/fit.hpp"
#include "rro/optim.hpp"
#include "rro/random.hpp"

namespace rro::sim {

double cliff_d_sorted(std::span<const double> s1, std::span<const double> s2, double shift) {
    const std::size_t m = s1.size();
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::uint64_t greater = 0;
    std::uint64_t less = 0;
    for (double raw : s2) {
        const double v = raw + shift;
        while (lo < m && s1[lo] < v) ++lo;
        if (hi < lo) hi = lo;
        while (hi < m && s1[hi] <= v) ++hi;
        greater += lo;
        less += m - hi;
    }
    const double pairs = static_cast<double>(m) * static_cast<double>(s2.size());
    return (static_cast<double>(greater) - static_cast<double>(less)) / pairs;
}

double cliff_d(const Sample& s1, const Sample& s2) {
    return cliff_d_sorted(s1.sorted(), s2.sorted());
}

namespace {

std::vector<double> stratified_draws(const dist::JohnsonSUParams& params, std::size_t size,
                                     Stream& rng) {
    std::vector<double> out(size);
    const double width = 1.0 / static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) {
        out[i] = dist::su_quantile(params, (static_cast<double>(i) + rng.uniform_open()) * width);
    }
    return out;
}

}  // namespace

double shift_for_effect_size(const dist::JohnsonSUParams& params, double d_target,
                             std::uint64_t seed, std::size_t reference_size) {
    if (!(d_target > 0.0 && d_target < 1.0)) {
        throw DomainError("effect size target must lie in (0, 1)");
    }
    if (reference_size < 2) throw DomainError("reference samples need at least 2 values");
    dist::validate(params);

    Stream rng(seed);
    const std::vector<double> s1 = stratified_draws(params, reference_size, rng);
    const std::vector<double> s2 = stratified_draws(params, reference_size, rng);

    optim::ObjectiveSpec spec;
    spec.objective = [&](std::span<const double> x) {
        const double e = cliff_d_sorted(s1, s2, x[0]) - d_target;
        return e * e;
    };
    spec.constraints.push_back(
        {"shift >= 0", [](std::span<const double> x) { return x[0] >= 0.0; }});
    spec.start = {0.0};
    spec.initial_step = {dist::su_analytic_moments(params).sd};
    const optim::MinimizeResult min = optim::minimize(spec);

    const double shift = min.argmin[0];
    const double residual = std::abs(cliff_d_sorted(s1, s2, shift) - d_target);
    if (!(residual <= kCalibrationTolerance)) {
        std::ostringstream msg;
        msg << "effect size calibration for d = " << d_target << " left residual " << residual
            << " at shift " << shift;
        throw CalibrationError(msg.str(), shift, residual);
    }
    return shift;
}

namespace {

std::size_t rejections(std::span<const double> p_values, double alpha) {
    if (p_values.empty()) throw DomainError("empty p-value set");
    std::size_t count = 0;
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p-value outside [0, 1]");
        if (p < alpha) ++count;
    }
    return count;
}

}  // namespace

double power(std::span<const double> p_values, double alpha) {
    const std::size_t k = rejections(p_values, alpha);
    return static_cast<double>(k) / static_cast<double>(p_values.size()) * 100.0;
}

double excess_type1(std::span<const double> p_values, double alpha) {
    const std::size_t k = rejections(p_values, alpha);
    return (static_cast<double>(k) / static_cast<double>(p_values.size()) - alpha) * 100.0;
}

Band binomial_band(std::size_t trials, double alpha, double test_level) {
    if (trials < 100) throw DomainError("binomial band needs at least 100 trials");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    if (!(test_level > 0.0 && test_level < 1.0)) {
        throw DomainError("test level must lie in (0, 1)");
    }
    const boost::math::binomial_distribution<double> b(static_cast<double>(trials), alpha);
    const double low = boost::math::quantile(b, test_level / 2.0);
    const double high = boost::math::quantile(boost::math::complement(b, test_level / 2.0));
    const auto t = static_cast<double>(trials);
    return {(low / t - alpha) * 100.0, (high / t - alpha) * 100.0};
}

std::string_view to_string(Skew skew) noexcept { return skew == Skew::left ? "left" : "right"; }

dist::JohnsonSUParams resolve(const ParentSpec& spec) {
    dist::JohnsonSUParams p;
    if (spec.params) {
        p = *spec.params;
        dist::validate(p);
    } else if (spec.moments) {
        p = dist::moment_match_su(*spec.moments);
    } else {
        throw DomainError("parent needs moments or parameters");
    }
    return spec.dispersion_doubled ? p.dispersion_doubled() : p;
}

std::vector<double> default_alphas() {
    std::vector<double> out;
    for (int i = 1; i <= 10; ++i) out.push_back(i / 100.0);
    return out;
}

const std::vector<std::string>& preset_set_ids() {
    static const std::vector<std::string> ids{"1", "2", "3a", "3b", "4", "5", "6", "7", "8"};
    return ids;
}

namespace {

std::uint64_t set_code(const std::string& id) {
    const auto& ids = preset_set_ids();
    const auto it = std::find(ids.begin(), ids.end(), id);
    // custom sets share one code; their seeds still differ by master seed
    return it == ids.end() ? 0 : static_cast<std::uint64_t>(it - ids.begin()) + 1;
}

std::vector<std::size_t> sweep_of(const SimulationConfig& c) {
    std::vector<std::size_t> out = c.mc_sweep.empty() ? std::vector<std::size_t>{c.mc_replicates}
                                                      : c.mc_sweep;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Seed path components below a replicate.
constexpr std::uint64_t kSampleStream = 0;
constexpr std::uint64_t kMonteCarloStream = 1;
// Seed path component for the effect-size calibration, outside any size pair.
constexpr std::uint64_t kCalibrationKey = 0xCA1B;

}  // namespace

void validate(const SimulationConfig& c) {
    if (c.pair_count < 100) throw DomainError("pair count must be at least 100");
    if (c.size_pairs.empty()) throw DomainError("no sample sizes configured");
    for (const auto& [m, n] : c.size_pairs) {
        if (m < 2 || n < 2) throw DomainError("sample sizes must be at least 2");
    }
    if (c.alphas.empty()) throw DomainError("no significance levels configured");
    for (double a : c.alphas) {
        if (!(a > 0.0 && a < 1.0)) throw DomainError("significance levels must lie in (0, 1)");
    }
    for (std::size_t b : sweep_of(c)) {
        if (b < kMinReplicates) {
            throw DomainError("Monte-Carlo replicate counts must be at least " +
                              std::to_string(kMinReplicates));
        }
    }
    if (c.effect_size_target &&
        !(*c.effect_size_target > 0.0 && *c.effect_size_target < 1.0)) {
        throw DomainError("effect size target must lie in (0, 1)");
    }
}

const MetricRow* SimulationResult::find(std::size_t m, std::size_t n, Method method, double alpha,
                                        std::size_t mc_replicates) const {
    if (method == Method::mc && mc_replicates == 0) mc_replicates = config.mc_replicates;
    for (const MetricRow& r : rows) {
        if (r.m != m || r.n != n || r.method != method) continue;
        if (std::abs(r.alpha - alpha) > 1e-12) continue;
        if (method == Method::mc && r.mc_replicates != mc_replicates) continue;
        return &r;
    }
    return nullptr;
}

namespace {

struct SizeTask {
    const SimulationConfig& config;
    const dist::JohnsonSUFamily& family;
    const dist::JohnsonSUParams& parent_1;
    const dist::JohnsonSUParams& parent_2;
    std::size_t size_index;
    std::size_t m;
    std::size_t n;
    std::vector<std::size_t> sweep;
    // p_mc[k][r] for sweep entry k; p_normal[r]
    std::vector<std::vector<double>> p_mc;
    std::vector<double> p_normal;

    void run_replicate(std::size_t r) {
        const std::uint64_t seed =
            derive_seed(config.master_seed, {set_code(config.set_id),
                                             static_cast<std::uint64_t>(config.skew), size_index,
                                             r});
        Stream rng(derive_seed(seed, {kSampleStream}));
        const Sample x = dist::su_sample(parent_1, m, rng);
        const Sample y = dist::su_sample(parent_2, n, rng);
        const RROStatistic stat = rro_statistic(x, y);
        p_normal[r] = normal_pvalue(stat, config.tail);

        const ParentFits fits = fit_parents(x, y, family);
        const std::vector<double> xi =
            mc_replicates(family, fits.params_x, fits.params_y_aligned, m, n, sweep.back(),
                          derive_seed(seed, {kMonteCarloStream}));
        std::size_t at_most = 0;
        std::size_t at_least = 0;
        std::size_t next = 0;
        for (std::size_t k = 0; k < sweep.size(); ++k) {
            for (; next < sweep[k]; ++next) {
                at_most += xi[next] <= stat.value;
                at_least += xi[next] >= stat.value;
            }
            p_mc[k][r] = tail_pvalues(at_most, at_least, sweep[k]).get(config.tail);
        }
    }

    void run_range(std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            try {
                run_replicate(r);
            } catch (const FitError& e) {
                throw FitError(context(r) + e.what(), e.best_point(), e.best_value(),
                               e.evaluations());
            }
        }
    }

    std::string context(std::size_t r) const {
        std::ostringstream msg;
        msg << "set " << config.set_id << " (" << to_string(config.skew) << "), m=" << m
            << " n=" << n << ", replicate " << r << ": ";
        return msg.str();
    }
};

void run_size(SizeTask& task, unsigned workers) {
    const std::size_t total = task.config.pair_count;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        task.run_range(0, total);
        return;
    }
    // Each worker stops at its first failure; the lowest failing replicate wins
    // so the reported error does not depend on scheduling.
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> threads;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(total, w * chunk);
        const std::size_t end = std::min(total, begin + chunk);
        threads.emplace_back([&task, &failures, w, begin, end] {
            try {
                task.run_range(begin, end);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

}  // namespace

SimulationResult run_simulation_set(const SimulationConfig& config) {
    validate(config);
    SimulationResult result;
    result.config = config;
    result.parent_1 = resolve(config.parent_1);
    result.parent_2 = resolve(config.parent_2);
    if (config.effect_size_target) {
        const std::uint64_t seed =
            derive_seed(config.master_seed, {set_code(config.set_id),
                                             static_cast<std::uint64_t>(config.skew),
                                             kCalibrationKey});
        const double shift = shift_for_effect_size(result.parent_1, *config.effect_size_target, seed);
        result.median_shift = shift;
        result.parent_2.xi += shift;
    }

    const dist::JohnsonSUFamily family;
    const std::vector<std::size_t> sweep = sweep_of(config);
    const bool is_power = config.effect_size_target.has_value();
    const std::string metric = is_power ? "power_percent" : "excess_type1_percent";

    for (std::size_t s = 0; s < config.size_pairs.size(); ++s) {
        const auto [m, n] = config.size_pairs[s];
        SizeTask task{config, family, result.parent_1, result.parent_2, s, m, n, sweep,
                      std::vector<std::vector<double>>(sweep.size(),
                                                       std::vector<double>(config.pair_count)),
                      std::vector<double>(config.pair_count)};
        run_size(task, config.workers);

        const auto emit = [&](Method method, std::size_t b, std::span<const double> p) {
            for (double alpha : config.alphas) {
                MetricRow row;
                row.m = m;
                row.n = n;
                row.method = method;
                row.mc_replicates = b;
                row.alpha = alpha;
                row.metric_name = metric;
                row.rejections = rejections(p, alpha);
                row.metric_value = is_power ? power(p, alpha) : excess_type1(p, alpha);
                row.band = binomial_band(config.pair_count, alpha, kSignificanceTestLevel);
                if (is_power) {
                    row.band.low += alpha * 100.0;
                    row.band.high += alpha * 100.0;
                }
                result.rows.push_back(std::move(row));
            }
            if (config.retain_p_values) {
                result.p_values.push_back({m, n, method, b, {p.begin(), p.end()}});
            }
        };
        for (std::size_t k = 0; k < sweep.size(); ++k) emit(Method::mc, sweep[k], task.p_mc[k]);
        emit(Method::normal, 0, task.p_normal);
    }
    return result;
}

std::vector<SimulationConfig> preset_configs(std::string_view set_id, std::size_t pair_count,
                                             std::size_t mc_replicates,
                                             std::uint64_t master_seed) {
    using Sizes = std::vector<std::pair<std::size_t, std::size_t>>;
    const Sizes equal{{15, 15}, {20, 20}, {40, 40}, {60, 60}};
    Sizes short_unequal = equal;
    short_unequal.insert(short_unequal.end(), {{15, 20}, {20, 40}, {40, 60}});
    Sizes long_unequal = equal;
    long_unequal.insert(long_unequal.end(),
                        {{15, 20}, {20, 15}, {20, 40}, {40, 20}, {40, 60}, {60, 40}});

    const auto moments = [](double skew) {
        ParentSpec p;
        p.moments = dist::MomentSpec{0.0, 1.0, skew};
        return p;
    };
    const auto doubled = [&](double skew) {
        ParentSpec p = moments(skew);
        p.dispersion_doubled = true;
        return p;
    };
    const auto make = [&](Skew skew, ParentSpec p1, ParentSpec p2, Sizes sizes) {
        SimulationConfig c;
        c.set_id = std::string(set_id);
        c.skew = skew;
        c.parent_1 = std::move(p1);
        c.parent_2 = std::move(p2);
        c.size_pairs = std::move(sizes);
        c.pair_count = pair_count;
        c.mc_replicates = mc_replicates;
        c.alphas = default_alphas();
        c.master_seed = master_seed;
        return c;
    };

    std::vector<SimulationConfig> out;
    for (Skew skew : {Skew::left, Skew::right}) {
        const double s = skew == Skew::left ? -1.5 : 1.5;
        if (set_id == "1") {
            out.push_back(make(skew, moments(s), moments(s), short_unequal));
        } else if (set_id == "2") {
            out.push_back(make(skew, moments(s), doubled(s), long_unequal));
        } else if (set_id == "3a" || set_id == "3b") {
            SimulationConfig c = make(skew, moments(s), moments(s), short_unequal);
            c.effect_size_target = set_id == "3a" ? 0.25 : 0.5;
            c.tail = Tail::left;
            out.push_back(std::move(c));
        } else if (set_id == "8") {
            SimulationConfig c = make(skew, moments(s), moments(s), {{15, 15}});
            c.mc_sweep = {100, 1000, 10000, 100000};
            c.mc_replicates = 100000;
            out.push_back(std::move(c));
        }
    }
    if (set_id == "4") {
        out.push_back(make(Skew::right, moments(1.0), moments(1.5), long_unequal));
    } else if (set_id == "5") {
        out.push_back(make(Skew::right, moments(1.0), doubled(1.5), long_unequal));
    } else if (set_id == "6") {
        out.push_back(make(Skew::left, moments(-1.0), moments(-1.5), long_unequal));
    } else if (set_id == "7") {
        out.push_back(make(Skew::left, moments(-1.0), doubled(-1.5), long_unequal));
    }
    if (out.empty()) throw DomainError("unknown simulation set '" + std::string(set_id) + "'");
    return out;
}

}  // namespace rro::sim
