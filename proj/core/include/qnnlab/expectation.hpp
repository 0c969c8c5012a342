// Copyright 2026 The qnnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Expectations over parameters drawn uniformly from [0, 2pi).
 *
 * The exact mode relies on a standard fact: the equispaced rule with N
 * nodes 2 pi k / N integrates every trigonometric polynomial of degree
 * < N exactly. Circuit objectives are degree 2 in each angle (each angle
 * enters one full-angle rotation), so products of two of them are degree
 * 4 and N = 5 suffices. The tensor grid has N^p points for p parameters.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnnlab {

enum class ExpectationMode { ExactGrid, MonteCarlo };

[[nodiscard]] std::string to_string(ExpectationMode mode);

struct ExpectationReport {
    double mean{0.0};
    /// Standard error of the mean; exactly 0 for grid quadrature.
    double std_error{0.0};
    ExpectationMode mode{ExpectationMode::ExactGrid};
    std::int64_t samples_or_gridpoints{0};
    std::optional<std::uint64_t> seed;
};

inline constexpr std::int64_t kDefaultGridBudget = 10'000'000;

/// Raised when an exact grid would exceed the evaluation budget.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(std::int64_t required, std::int64_t budget);
    [[nodiscard]] std::int64_t required() const noexcept { return required_; }

  private:
    std::int64_t required_;
};

using ScalarFn = std::function<double(std::span<const double>)>;
/// Writes one value per output slot into `out`.
using VectorFn =
    std::function<void(std::span<const double>, std::span<double> out)>;

/// Number of grid points, or -1 on overflow past `budget`.
[[nodiscard]] std::int64_t grid_size(int n_params, int max_trig_degree,
                                     std::int64_t budget);

[[nodiscard]] ExpectationReport
exact_param_expectation(const ScalarFn &fn, int n_params, int max_trig_degree,
                        std::int64_t budget = kDefaultGridBudget);

/// Grid quadrature of several quantities that share each evaluation.
[[nodiscard]] std::vector<ExpectationReport>
exact_param_expectations(const VectorFn &fn, int n_params, int n_outputs,
                         int max_trig_degree,
                         std::int64_t budget = kDefaultGridBudget);

[[nodiscard]] ExpectationReport mc_param_expectation(const ScalarFn &fn,
                                                     int n_params,
                                                     std::int64_t samples,
                                                     std::uint64_t seed);

[[nodiscard]] std::vector<ExpectationReport>
mc_param_expectations(const VectorFn &fn, int n_params, int n_outputs,
                      std::int64_t samples, std::uint64_t seed);

} // namespace qnnlab
