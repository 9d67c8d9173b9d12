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
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rro::optim {

using Objective = std::function<double(std::span<const double>)>;

/// Strict inequality constraint; a point is feasible when `satisfied` holds.
struct Constraint {
    std::string description;
    std::function<bool(std::span<const double>)> satisfied;
};

/// Lower bound x[index] > bound.
Constraint greater_than(std::size_t index, double bound, std::string description = {});
/// Upper bound x[index] < bound.
Constraint less_than(std::size_t index, double bound, std::string description = {});

struct ObjectiveSpec {
    Objective objective;
    std::vector<Constraint> constraints;
    std::vector<double> start;
    /// Per-coordinate base step; empty means 1.0 for every coordinate.
    std::vector<double> initial_step;
    double tolerance = 1e-8;
    std::size_t max_evaluations = 100000;
    /// A trial point is accepted only when it beats the incumbent by more than
    /// this fraction of |f|. Stops round-off noise on flat ridges from
    /// registering as progress and re-expanding the step.
    double relative_improvement = 1e-12;

    std::size_t dimension() const noexcept { return start.size(); }
};

struct MinimizeResult {
    std::vector<double> argmin;
    double value = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
    /// Objective value after every accepted move, starting with the start point.
    std::vector<double> accepted_values;
};

bool feasible(const ObjectiveSpec& spec, std::span<const double> x);

/// Compass search. Polls x +/- s * step_i along each coordinate in order and
/// moves to the first sufficiently better feasible point; the step multiplier s
/// doubles after a move and halves after a failed poll. Infeasible trial
/// points are skipped without evaluating the objective, and NaN objective
/// values count as +inf. Converged means s * max(step_i) fell below the
/// tolerance inside the evaluation budget.
///
/// Throws DomainError when the start is infeasible or the spec is malformed.
MinimizeResult minimize(const ObjectiveSpec& spec);

}  // namespace rro::optim
