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

#include <stdexcept>
#include <string>
#include <vector>

namespace rro {

// Invalid argument outside an operation's domain (bad sample, u outside (0,1), ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact enumeration refused because C(m+n, m) is above the configured cap.
class EnumerationCapExceeded : public std::runtime_error {
public:
    EnumerationCapExceeded(const std::string& what, double patterns, double cap)
        : std::runtime_error(what), patterns_(patterns), cap_(cap) {}

    double patterns() const noexcept { return patterns_; }
    double cap() const noexcept { return cap_; }

private:
    double patterns_;
    double cap_;
};

// Maximum-likelihood fit or moment match that did not meet its convergence
// contract. Carries the best point the optimizer reached.
class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, std::vector<double> best_point, double best_value,
             std::size_t evaluations)
        : std::runtime_error(what),
          best_point_(std::move(best_point)),
          best_value_(best_value),
          evaluations_(evaluations) {}

    const std::vector<double>& best_point() const noexcept { return best_point_; }
    double best_value() const noexcept { return best_value_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    std::vector<double> best_point_;
    double best_value_;
    std::size_t evaluations_;
};

// Effect-size shift search whose residual in Cliff's d stayed above tolerance.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& what, double shift, double residual)
        : std::runtime_error(what), shift_(shift), residual_(residual) {}

    double shift() const noexcept { return shift_; }
    double residual() const noexcept { return residual_; }

private:
    double shift_;
    double residual_;
};

}  // namespace rro
