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

#include "rro/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "rro/errors.hpp"

namespace rro::dist {

double log_likelihood(const DistributionFamily& family, std::span<const double> params,
                      const Sample& data) {
    return family.log_likelihood(params, data.values());
}

namespace {

// Compass-search spec over the family's search coordinates. The family's own
// constraints are checked on the mapped-back parameters.
optim::ObjectiveSpec search_spec(const DistributionFamily& family, std::span<const double> start,
                                 std::function<double(std::span<const double>)> objective) {
    optim::ObjectiveSpec spec;
    spec.objective = [&family, objective = std::move(objective)](std::span<const double> c) {
        return objective(family.from_search(c));
    };
    for (optim::Constraint& c : family.constraints()) {
        spec.constraints.push_back(
            {c.description, [&family, test = std::move(c.satisfied)](std::span<const double> x) {
                 return test(family.from_search(x));
             }});
    }
    for (optim::Constraint& c : family.search_bounds()) spec.constraints.push_back(std::move(c));
    spec.start = family.to_search(start);
    spec.initial_step = family.search_steps(spec.start);
    return spec;
}

}  // namespace

FitResult fit_mle(const DistributionFamily& family, const Sample& data, FitOptions options) {
    const std::size_t dim = family.parameter_dimension();
    if (data.size() < dim) {
        throw DomainError("fit needs at least " + std::to_string(dim) + " observations for " +
                          family.name());
    }
    const SampleMoments mom = sample_moments(data.values());
    if (!(mom.sd > 0.0)) throw DomainError("fit needs data with nonzero spread");

    const double center = mom.median;
    const double scale = mom.sd;
    std::vector<double> z(data.begin(), data.end());
    for (double& v : z) v = (v - center) / scale;

    ParamVector start = family.standard_initial_guess(z);
    if (!family.admits(start)) start = family.standard_moment_start(0.0);

    optim::ObjectiveSpec spec = search_spec(family, start, [&family, &z](std::span<const double> p) {
        const double ll = family.log_likelihood(p, z);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
    });
    if (!optim::feasible(spec, spec.start)) {
        spec.start = family.to_search(family.standard_moment_start(0.0));
        spec.initial_step = family.search_steps(spec.start);
    }
    spec.tolerance = options.tolerance;
    spec.max_evaluations = options.max_evaluations;

    const optim::MinimizeResult min = optim::minimize(spec);
    ParamVector best = family.location_scale(family.from_search(min.argmin), scale, center);
    if (!min.converged) {
        const double best_ll = family.log_likelihood(best, data.values());
        std::ostringstream msg;
        msg << family.name() << " likelihood search did not converge after " << min.evaluations
            << " evaluations (best log-likelihood " << best_ll << ")";
        throw FitError(msg.str(), std::move(best), best_ll, min.evaluations);
    }

    FitResult out;
    out.params = std::move(best);
    out.log_likelihood = family.log_likelihood(out.params, data.values());
    out.start = family.location_scale(start, scale, center);
    out.start_log_likelihood = family.log_likelihood(out.start, data.values());
    out.evaluations = min.evaluations;
    return out;
}

namespace {

double moment_error(const std::optional<DistributionMoments>& m, const MomentSpec& target) {
    if (!m) return std::numeric_limits<double>::infinity();
    const double a = m->median - target.median;
    const double b = m->sd - target.sd;
    const double c = m->skewness - target.skewness;
    const double e = a * a + b * b + c * c;
    return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
}

}  // namespace

MomentMatchResult moment_match(const DistributionFamily& family, const MomentSpec& spec,
                               double tolerance) {
    if (!(spec.sd > 0.0) || !std::isfinite(spec.sd) || !std::isfinite(spec.median) ||
        !std::isfinite(spec.skewness)) {
        throw DomainError("moment spec needs finite values and sd > 0");
    }
    const MomentSpec standard{0.0, 1.0, spec.skewness};

    const optim::ObjectiveSpec full =
        search_spec(family, family.standard_moment_start(spec.skewness),
                    [&family, &standard](std::span<const double> p) {
                        return moment_error(family.analytic_moments(p), standard);
                    });

    // Restrict the search to the free coordinates, holding the others at the start.
    const std::vector<std::size_t> free = family.moment_match_coordinates();
    const std::vector<double> held = full.start;
    const auto expand = [free, held](std::span<const double> reduced) {
        std::vector<double> c = held;
        for (std::size_t i = 0; i < free.size(); ++i) c[free[i]] = reduced[i];
        return c;
    };
    optim::ObjectiveSpec search;
    search.objective = [&full, expand](std::span<const double> r) {
        return full.objective(expand(r));
    };
    for (const optim::Constraint& c : full.constraints) {
        search.constraints.push_back(
            {c.description, [test = c.satisfied, expand](std::span<const double> r) {
                 return test(expand(r));
             }});
    }
    for (std::size_t i : free) {
        search.start.push_back(full.start[i]);
        search.initial_step.push_back(full.initial_step[i]);
    }
    const optim::MinimizeResult min = optim::minimize(search);

    MomentMatchResult out;
    out.params = family.location_scale(family.from_search(expand(min.argmin)), spec.sd,
                                       spec.median);
    out.residual = std::sqrt(moment_error(family.analytic_moments(out.params), spec));
    out.evaluations = min.evaluations;
    if (!(out.residual <= tolerance)) {
        std::ostringstream msg;
        msg << family.name() << " moment match for (median " << spec.median << ", sd " << spec.sd
            << ", skewness " << spec.skewness << ") left residual " << out.residual;
        throw FitError(msg.str(), out.params, out.residual, out.evaluations);
    }
    return out;
}

JohnsonSUParams moment_match_su(const MomentSpec& spec, bool strict_gamma) {
    const JohnsonSUFamily family(strict_gamma);
    return JohnsonSUParams::from_span(moment_match(family, spec).params);
}

}  // namespace rro::dist
