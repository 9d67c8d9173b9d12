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

#include "rro/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rro/errors.hpp"

namespace rro::optim {

Constraint greater_than(std::size_t index, double bound, std::string description) {
    if (description.empty()) {
        description = "x[" + std::to_string(index) + "] > " + std::to_string(bound);
    }
    return {std::move(description),
            [index, bound](std::span<const double> x) { return x[index] > bound; }};
}

Constraint less_than(std::size_t index, double bound, std::string description) {
    if (description.empty()) {
        description = "x[" + std::to_string(index) + "] < " + std::to_string(bound);
    }
    return {std::move(description),
            [index, bound](std::span<const double> x) { return x[index] < bound; }};
}

bool feasible(const ObjectiveSpec& spec, std::span<const double> x) {
    return std::all_of(spec.constraints.begin(), spec.constraints.end(),
                       [x](const Constraint& c) { return c.satisfied(x); });
}

MinimizeResult minimize(const ObjectiveSpec& spec) {
    const std::size_t dim = spec.dimension();
    if (dim == 0) throw DomainError("minimize: empty start point");
    if (!spec.objective) throw DomainError("minimize: no objective");
    if (!(spec.tolerance > 0.0)) throw DomainError("minimize: tolerance must be positive");
    if (!(spec.relative_improvement >= 0.0)) {
        throw DomainError("minimize: relative_improvement must be non-negative");
    }
    if (!spec.initial_step.empty() && spec.initial_step.size() != dim) {
        throw DomainError("minimize: initial_step has the wrong dimension");
    }
    for (const Constraint& c : spec.constraints) {
        if (!c.satisfied(spec.start)) {
            throw DomainError("minimize: start point violates constraint '" + c.description + "'");
        }
    }

    std::vector<double> base = spec.initial_step;
    if (base.empty()) base.assign(dim, 1.0);
    for (double b : base) {
        if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("minimize: steps must be positive");
    }
    const double largest_base = *std::max_element(base.begin(), base.end());

    const auto evaluate = [&spec](std::span<const double> x) {
        const double v = spec.objective(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    MinimizeResult result;
    std::vector<double> x = spec.start;
    double fx = evaluate(x);
    result.evaluations = 1;
    result.accepted_values.push_back(fx);

    std::vector<double> trial(dim);
    std::vector<double> sweep_start(dim);
    double scale = 1.0;
    bool exhausted = false;
    // Evaluates `trial` and moves there when it is a sufficient improvement.
    const auto try_move = [&]() {
        if (!feasible(spec, trial)) return false;
        if (result.evaluations >= spec.max_evaluations) {
            exhausted = true;
            return false;
        }
        const double ft = evaluate(trial);
        ++result.evaluations;
        if (!(ft < fx - spec.relative_improvement * std::abs(fx))) return false;
        x.swap(trial);
        fx = ft;
        result.accepted_values.push_back(fx);
        return true;
    };

    while (!exhausted) {
        if (scale * largest_base < spec.tolerance) {
            result.converged = true;
            break;
        }
        if (result.evaluations >= spec.max_evaluations) break;

        sweep_start = x;
        bool moved = false;
        for (std::size_t i = 0; i < dim && !exhausted; ++i) {
            for (double sign : {1.0, -1.0}) {
                trial = x;
                trial[i] += sign * scale * base[i];
                if (trial[i] == x[i]) continue;
                if (try_move()) {
                    moved = true;
                    break;
                }
                if (exhausted) break;
            }
        }
        if (exhausted) break;
        if (moved) {
            // pattern moves along the net displacement of the sweep, doubling
            // the stride while they keep improving
            std::vector<double> stride(dim);
            for (std::size_t i = 0; i < dim; ++i) stride[i] = x[i] - sweep_start[i];
            while (true) {
                trial = x;
                for (std::size_t i = 0; i < dim; ++i) trial[i] += stride[i];
                if (!try_move()) break;
                for (double& v : stride) v *= 2.0;
            }
        }
        scale = moved ? scale * 2.0 : scale * 0.5;
    }

    result.argmin = std::move(x);
    result.value = fx;
    return result;
}

}  // namespace rro::optim
