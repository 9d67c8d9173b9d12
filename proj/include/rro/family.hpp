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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rro/johnson_su.hpp"
#include "rro/optim.hpp"
#include "rro/random.hpp"

namespace rro::dist {

using ParamVector = std::vector<double>;

/// A parametric location-scale family that can be fitted to a sample and
/// sampled from. Parameter vectors are plain spans so the optimizer can work
/// on them directly; each family documents its layout in parameter_names().
class DistributionFamily {
public:
    virtual ~DistributionFamily() = default;

    virtual std::string name() const = 0;
    virtual std::vector<std::string> parameter_names() const = 0;
    std::size_t parameter_dimension() const { return parameter_names().size(); }

    /// Inequality constraints defining the admissible parameter set.
    virtual std::vector<optim::Constraint> constraints() const = 0;
    bool admits(std::span<const double> params) const;

    virtual double log_pdf(std::span<const double> params, double x) const = 0;
    /// Sum of log_pdf over the data.
    virtual double log_likelihood(std::span<const double> params,
                                  std::span<const double> data) const;
    virtual double quantile(std::span<const double> params, double u) const = 0;
    virtual void sample(std::span<const double> params, std::span<double> out,
                        Stream& rng) const = 0;
    virtual std::optional<DistributionMoments> analytic_moments(
        std::span<const double> params) const = 0;

    /// Parameters of factor * X + offset for X distributed with `params`.
    virtual ParamVector location_scale(std::span<const double> params, double factor,
                                       double offset) const = 0;

    /// Fixed starting point for matching (median 0, sd 1, `skewness`).
    virtual ParamVector standard_moment_start(double skewness) const = 0;

    /// Fits and moment matches search over coordinates chosen per family; the
    /// default is the parameter vector itself.
    virtual ParamVector to_search(std::span<const double> params) const;
    virtual ParamVector from_search(std::span<const double> coords) const;
    /// Base compass-search steps, in search coordinates.
    virtual ParamVector search_steps(std::span<const double> coords) const = 0;
    /// Search coordinates varied by moment matching; the rest stay at their
    /// start values. Lets a family pin the directions that three moment
    /// targets leave undetermined.
    virtual std::vector<std::size_t> moment_match_coordinates() const;
    /// Box constraints on search coordinates for standardized data. Keeps the
    /// region compact where the likelihood has no interior maximum and climbs
    /// toward a limiting family.
    virtual std::vector<optim::Constraint> search_bounds() const { return {}; }

    /// Starting point for likelihood maximization on standardized data
    /// (median 0, sd 1). The default matches (0, 1, sample skewness).
    virtual ParamVector standard_initial_guess(std::span<const double> standardized) const;
};

class JohnsonSUFamily final : public DistributionFamily {
public:
    /// `strict_gamma` adds gamma > 0 to the constraint set.
    explicit JohnsonSUFamily(bool strict_gamma = false) : strict_gamma_(strict_gamma) {}

    bool strict_gamma() const noexcept { return strict_gamma_; }

    std::string name() const override { return "johnson-su"; }
    std::vector<std::string> parameter_names() const override {
        return {"lambda", "gamma", "delta", "xi"};
    }
    std::vector<optim::Constraint> constraints() const override;
    double log_pdf(std::span<const double> params, double x) const override;
    double log_likelihood(std::span<const double> params,
                          std::span<const double> data) const override;
    double quantile(std::span<const double> params, double u) const override;
    void sample(std::span<const double> params, std::span<double> out,
                Stream& rng) const override;
    std::optional<DistributionMoments> analytic_moments(
        std::span<const double> params) const override;
    ParamVector location_scale(std::span<const double> params, double factor,
                               double offset) const override;
    ParamVector standard_moment_start(double skewness) const override;
    /// Search coordinates (median, log scale, log delta, gamma/delta) with
    /// scale = lambda * cosh(gamma/delta) / delta. The normal limit is then
    /// delta -> inf and the lognormal limit |gamma/delta| -> inf with the
    /// other three coordinates held fixed, so neither is a diagonal ridge.
    ParamVector to_search(std::span<const double> params) const override;
    ParamVector from_search(std::span<const double> coords) const override;
    ParamVector search_steps(std::span<const double> coords) const override;
    std::vector<optim::Constraint> search_bounds() const override;
    /// Median, scale and delta; gamma/delta stays at the start value, which
    /// selects one member of the one-parameter family sharing three moments.
    std::vector<std::size_t> moment_match_coordinates() const override { return {0, 1, 2}; }

    static constexpr double kMaxDelta = 50.0;
    static constexpr double kMinDelta = 0.1;
    static constexpr double kMaxAbsOmega = 3.0;
    static constexpr double kMaxAbsLogScale = 20.0;
    static constexpr double kMaxAbsMedian = 1e3;

private:
    bool strict_gamma_;
};

/// Normal baseline: parameters (mu, sigma).
class NormalFamily final : public DistributionFamily {
public:
    std::string name() const override { return "normal"; }
    std::vector<std::string> parameter_names() const override { return {"mu", "sigma"}; }
    std::vector<optim::Constraint> constraints() const override;
    double log_pdf(std::span<const double> params, double x) const override;
    double quantile(std::span<const double> params, double u) const override;
    void sample(std::span<const double> params, std::span<double> out,
                Stream& rng) const override;
    std::optional<DistributionMoments> analytic_moments(
        std::span<const double> params) const override;
    ParamVector location_scale(std::span<const double> params, double factor,
                               double offset) const override;
    ParamVector standard_moment_start(double skewness) const override;
    ParamVector search_steps(std::span<const double> coords) const override;
    ParamVector standard_initial_guess(std::span<const double> standardized) const override;
};

/// "johnson-su" or "normal"; nullptr for unknown names.
std::unique_ptr<DistributionFamily> make_family(const std::string& name, bool strict_gamma = false);

}  // namespace rro::dist
