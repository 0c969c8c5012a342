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

#include "qnnlab/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qnnlab {

namespace {

// Neumaier compensated sum; the grid is traversed in a fixed order, so the
// result is reproducible bit for bit.
struct CompensatedSum {
    double sum{0.0};
    double carry{0.0};

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + carry; }
};

} // namespace

std::string to_string(ExpectationMode mode) {
    return mode == ExpectationMode::ExactGrid ? "exact" : "mc";
}

BudgetExceeded::BudgetExceeded(std::int64_t required, std::int64_t budget)
    : std::runtime_error(
          "exact grid needs " +
          (required < 0 ? std::string("more than ") + std::to_string(budget)
                        : std::to_string(required)) +
          " evaluations, budget is " + std::to_string(budget) +
          "; use Monte Carlo mode instead"),
      required_{required} {}

std::int64_t grid_size(int n_params, int max_trig_degree, std::int64_t budget) {
    if (n_params < 0 || max_trig_degree < 0) {
        throw std::invalid_argument("grid needs n_params, degree >= 0");
    }
    const std::int64_t nodes = max_trig_degree + 1;
    std::int64_t total = 1;
    for (int p = 0; p < n_params; ++p) {
        if (total > budget / nodes) {
            return -1;
        }
        total *= nodes;
    }
    return total;
}

std::vector<ExpectationReport>
exact_param_expectations(const VectorFn &fn, int n_params, int n_outputs,
                         int max_trig_degree, std::int64_t budget) {
    const std::int64_t total = grid_size(n_params, max_trig_degree, budget);
    if (total < 0 || total > budget) {
        throw BudgetExceeded(total, budget);
    }
    const int nodes = max_trig_degree + 1;
    std::vector<double> angles(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        angles[static_cast<std::size_t>(k)] =
            2.0 * std::numbers::pi * k / nodes;
    }

    std::vector<int> index(static_cast<std::size_t>(n_params), 0);
    std::vector<double> theta(static_cast<std::size_t>(n_params), 0.0);
    std::vector<double> values(static_cast<std::size_t>(n_outputs), 0.0);
    std::vector<CompensatedSum> sums(static_cast<std::size_t>(n_outputs));
    for (std::int64_t point = 0; point < total; ++point) {
        for (std::size_t p = 0; p < index.size(); ++p) {
            theta[p] = angles[static_cast<std::size_t>(index[p])];
        }
        fn(theta, values);
        for (std::size_t o = 0; o < values.size(); ++o) {
            sums[o].add(values[o]);
        }
        // Odometer increment, last parameter fastest.
        for (std::size_t p = index.size(); p-- > 0;) {
            if (++index[p] < nodes) {
                break;
            }
            index[p] = 0;
        }
    }

    std::vector<ExpectationReport> reports(static_cast<std::size_t>(n_outputs));
    for (std::size_t o = 0; o < reports.size(); ++o) {
        reports[o].mean = sums[o].value() / static_cast<double>(total);
        reports[o].mode = ExpectationMode::ExactGrid;
        reports[o].samples_or_gridpoints = total;
    }
    return reports;
}

ExpectationReport exact_param_expectation(const ScalarFn &fn, int n_params,
                                          int max_trig_degree,
                                          std::int64_t budget) {
    return exact_param_expectations(
        [&fn](std::span<const double> theta, std::span<double> out) {
            out[0] = fn(theta);
        },
        n_params, 1, max_trig_degree, budget)[0];
}

std::vector<ExpectationReport>
mc_param_expectations(const VectorFn &fn, int n_params, int n_outputs,
                      std::int64_t samples, std::uint64_t seed) {
    if (samples < 2) {
        throw std::invalid_argument("Monte Carlo needs at least 2 samples");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> theta(static_cast<std::size_t>(n_params));
    std::vector<double> values(static_cast<std::size_t>(n_outputs), 0.0);
    // Welford running moments per output.
    std::vector<double> mean(values.size(), 0.0);
    std::vector<double> m2(values.size(), 0.0);
    for (std::int64_t s = 0; s < samples; ++s) {
        for (double &t : theta) {
            t = angle(rng);
        }
        fn(theta, values);
        const double count = static_cast<double>(s + 1);
        for (std::size_t o = 0; o < values.size(); ++o) {
            const double delta = values[o] - mean[o];
            mean[o] += delta / count;
            m2[o] += delta * (values[o] - mean[o]);
        }
    }
    std::vector<ExpectationReport> reports(values.size());
    const double n = static_cast<double>(samples);
    for (std::size_t o = 0; o < reports.size(); ++o) {
        const double variance = std::max(0.0, m2[o] / (n - 1.0));
        reports[o].mean = mean[o];
        reports[o].std_error = std::sqrt(variance / n);
        reports[o].mode = ExpectationMode::MonteCarlo;
        reports[o].samples_or_gridpoints = samples;
        reports[o].seed = seed;
    }
    return reports;
}

ExpectationReport mc_param_expectation(const ScalarFn &fn, int n_params,
                                       std::int64_t samples,
                                       std::uint64_t seed) {
    return mc_param_expectations(
        [&fn](std::span<const double> theta, std::span<double> out) {
            out[0] = fn(theta);
        },
        n_params, 1, samples, seed)[0];
}

} // namespace qnnlab
