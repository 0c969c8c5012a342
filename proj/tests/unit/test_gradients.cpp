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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qnnlab/architectures.hpp"
#include "qnnlab/gradients.hpp"

namespace qnnlab {
namespace {

constexpr double kPi = std::numbers::pi;

CircuitSpec single_ry() {
    CircuitSpec c;
    c.n_qubits = 1;
    c.n_params = 1;
    c.gates = {GateOp::ry(1, 0)};
    return c;
}

std::vector<double> random_real_vector(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<double> x(std::size_t{1} << n);
    for (double &v : x) {
        v = g(rng);
    }
    return x;
}

std::vector<CircuitSpec> small_architectures(int n, std::uint64_t seed) {
    std::vector<CircuitSpec> out{build_dtt(n), build_random(n, 2 * n - 1, n - 1, seed)};
    if ((n & (n - 1)) == 0) {
        out.push_back(build_tt(n));
    }
    for (int n_c = 1; n_c <= n - 1; ++n_c) {
        out.push_back(build_sc(n, n_c));
    }
    return out;
}

TEST(Objective, TreeExamples) {
    const CircuitSpec tt = build_tt(2);
    const Objective obj{tt, Observable::z1(2), StateVector::zeros(2)};
    EXPECT_DOUBLE_EQ(objective_value(obj, std::vector<double>(3, 0.0)), 1.0);
    std::vector<double> theta(3, 0.0);
    theta[static_cast<std::size_t>(tt.slot_of(1, 1))] = kPi / 2;
    EXPECT_NEAR(objective_value(obj, theta), 0.0, 1e-15);
}

TEST(Objective, MatchesDenseOracleAndStaysInUnitInterval) {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 4; ++n) {
        for (const CircuitSpec &c : small_architectures(n, 3)) {
            for (int trial = 0; trial < 5; ++trial) {
                const auto x = random_real_vector(n, rng);
                const auto theta = testing::uniform_angles(c.n_params, rng);
                const StateVector in = StateVector::amplitude_encode(x);
                const double f = objective_value({c, Observable::z1(n), in}, theta);
                const double want =
                    testing::dense_f(c, testing::to_eigen(in.amplitudes()), theta, {{1, 1.0}});
                EXPECT_NEAR(f, want, 1e-12);
                EXPECT_GE(f, 0.0);
                EXPECT_LE(f, 1.0);
                std::vector<std::pair<int, double>> mean_terms;
                for (int q = 1; q <= n; ++q) {
                    mean_terms.emplace_back(q, 1.0 / n);
                }
                EXPECT_NEAR(objective_value({c, Observable::mean_z(n), in}, theta),
                            testing::dense_f(c, testing::to_eigen(in.amplitudes()),
                                             theta, mean_terms),
                            1e-12);
            }
        }
    }
}

TEST(Observable, Validation) {
    EXPECT_NO_THROW(Observable::mean_z(3).validate(3));
    EXPECT_THROW(Observable::z1(3).validate(2), std::invalid_argument);
    Observable bad = Observable::mean_z(2);
    bad.terms[0].weight = 0.9;
    EXPECT_THROW(bad.validate(2), std::invalid_argument);
    EXPECT_THROW(Observable{}.validate(1), std::invalid_argument);
}

TEST(ShiftRule, SingleRyClosedForm) {
    const Objective obj{single_ry(), Observable::z1(1), StateVector::zeros(1)};
    for (double t : {0.0, kPi / 8, 0.3, 2.0}) {
        const std::vector<double> theta{t};
        EXPECT_NEAR(objective_value(obj, theta), 0.5 + 0.5 * std::cos(2 * t), 1e-15);
        EXPECT_NEAR(parameter_shift_grad(obj, theta).values[0], -std::sin(2 * t), 1e-14);
    }
    const std::vector<double> eighth{kPi / 8};
    EXPECT_NEAR(finite_difference_grad(obj, eighth, 1e-5).values[0], -std::sqrt(0.5), 1e-9);
}

TEST(ShiftRule, EmptyCircuitGivesEmptyGradient) {
    CircuitSpec c;
    c.n_qubits = 2;
    const Objective obj{c, Observable::z1(2), StateVector::zeros(2)};
    EXPECT_TRUE(parameter_shift_grad(obj, {}).values.empty());
}

TEST(ShiftRule, MatchesFiniteDifferences) {
    std::mt19937_64 rng(12);
    for (int n = 2; n <= 5; ++n) {
        for (const CircuitSpec &c : small_architectures(n, 100 + n)) {
            for (int trial = 0; trial < 4; ++trial) {
                const auto angles = testing::uniform_angles(n, rng);
                const Objective obj{c, Observable::z1(n), StateVector::product(angles)};
                const auto theta = testing::uniform_angles(c.n_params, rng);
                const auto shift = parameter_shift_grad(obj, theta).values;
                const auto fd = finite_difference_grad(obj, theta).values;
                for (std::size_t j = 0; j < shift.size(); ++j) {
                    EXPECT_NEAR(shift[j], fd[j], 1e-8) << c.architecture << " n=" << n;
                }
            }
        }
    }
}

TEST(ShiftRule, NormNeverExceedsParameterCount) {
    std::mt19937_64 rng(13);
    for (int n = 2; n <= 5; ++n) {
        for (const CircuitSpec &c : small_architectures(n, 7)) {
            const Objective obj{c, Observable::z1(n),
                                StateVector::amplitude_encode(random_real_vector(n, rng))};
            for (int trial = 0; trial < 10; ++trial) {
                const auto theta = testing::uniform_angles(c.n_params, rng);
                const GradientVector g = parameter_shift_grad(obj, theta);
                for (double v : g.values) {
                    EXPECT_LE(std::abs(v), 1.0 + 1e-12);
                }
                EXPECT_LE(g.norm_squared(), 2.0 * n - 1 + 1e-12);
            }
        }
    }
}

TEST(ShotMode, DeterministicForEqualSeeds) {
    std::mt19937_64 rng(14);
    const Objective obj{build_tt(4), Observable::z1(4), StateVector::zeros(4)};
    const auto theta = testing::uniform_angles(7, rng);
    const auto a = parameter_shift_grad(obj, theta, EvalMode::sampled(200, 5)).values;
    const auto b = parameter_shift_grad(obj, theta, EvalMode::sampled(200, 5)).values;
    const auto c = parameter_shift_grad(obj, theta, EvalMode::sampled(200, 6)).values;
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(ShotMode, RejectsNonDiagonalObservables) {
    std::mt19937_64 rng(0);
    Observable x_obs{{{PauliString::parse("XI"), 1.0}}};
    EXPECT_THROW((void)x_obs.expectation(StateVector::zeros(2), 10, rng),
                 std::invalid_argument);
}

TEST(ShotMode, MeanZFromOneSampleSetIsUnbiased) {
    std::mt19937_64 rng(15);
    const CircuitSpec c = build_sc(3, 1);
    const auto theta = testing::uniform_angles(c.n_params, rng);
    const StateVector out = run_circuit(StateVector::zeros(3), c, theta);
    const Observable obs = Observable::mean_z(3);
    const double exact = obs.expectation(out);
    const int trials = 400;
    const std::int64_t shots = 500;
    double mean = 0.0;
    for (int t = 0; t < trials; ++t) {
        mean += obs.expectation(out, shots, rng);
    }
    mean /= trials;
    // Per-shot value lies in [-1, 1], so its variance is at most 1.
    EXPECT_NEAR(mean, exact, 3.0 / std::sqrt(static_cast<double>(shots) * trials));
}

std::vector<LabeledState> toy_batch(int n, int size, std::mt19937_64 &rng) {
    std::vector<LabeledState> batch;
    for (int i = 0; i < size; ++i) {
        batch.push_back({StateVector::amplitude_encode(random_real_vector(n, rng)), i % 2});
    }
    return batch;
}

TEST(ClassifierLoss, ArithmeticExamples) {
    // Empty circuits make f = 1/2 + 1/2 <Z_1> of the input directly.
    CircuitSpec id;
    id.n_qubits = 1;
    const ObjectiveTemplate tmpl{id, Observable::z1(1)};
    auto with_f = [](double f) {
        // <Z> = 2f - 1 = cos^2 - sin^2 with cos^2 = f.
        return StateVector::from_amplitudes({std::sqrt(f), std::sqrt(1 - f)});
    };
    const std::vector<LabeledState> fit{{with_f(1.0), 1}, {with_f(0.0), 0}};
    EXPECT_NEAR(classifier_loss({}, 0.0, fit, tmpl), 0.0, 1e-15);
    const std::vector<LabeledState> half{{with_f(0.5), 0}};
    EXPECT_NEAR(classifier_loss({}, 0.0, half, tmpl), 0.25, 1e-15);
    const std::vector<LabeledState> two{{with_f(0.2), 0}, {with_f(0.9), 1}};
    EXPECT_NEAR(classifier_loss({}, 0.1, two, tmpl), 0.045, 1e-15);

    const LossGradient g = classifier_loss_grad({}, 0.0, fit, tmpl);
    EXPECT_NEAR(g.bias, 0.0, 1e-15);
    EXPECT_NEAR(g.loss, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(g.batch_error, 0.0);
    EXPECT_THROW((void)classifier_loss({}, 0.0, {}, tmpl), std::invalid_argument);
}

TEST(ClassifierLoss, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(16);
    const double h = 1e-5;
    for (int n = 2; n <= 4; n += 2) {
        const ObjectiveTemplate tmpl{build_tt(n), Observable::z1(n)};
        const auto batch = toy_batch(n, 4, rng);
        auto theta = testing::uniform_angles(tmpl.circuit.n_params, rng);
        const double b = 0.13;
        const LossGradient g = classifier_loss_grad(theta, b, batch, tmpl);
        EXPECT_NEAR(g.loss, classifier_loss(theta, b, batch, tmpl), 1e-14);
        for (std::size_t j = 0; j < theta.size(); ++j) {
            const double keep = theta[j];
            theta[j] = keep + h;
            const double plus = classifier_loss(theta, b, batch, tmpl);
            theta[j] = keep - h;
            const double minus = classifier_loss(theta, b, batch, tmpl);
            theta[j] = keep;
            EXPECT_NEAR(g.theta.values[j], (plus - minus) / (2 * h), 1e-8);
        }
        const double db = (classifier_loss(theta, b + h, batch, tmpl) -
                           classifier_loss(theta, b - h, batch, tmpl)) /
                          (2 * h);
        EXPECT_NEAR(g.bias, db, 1e-8);
    }
}

TEST(ClassifierLoss, ManyShotsApproachExactGradient) {
    std::mt19937_64 rng(17);
    const ObjectiveTemplate tmpl{build_tt(2), Observable::z1(2)};
    const auto batch = toy_batch(2, 2, rng);
    const auto theta = testing::uniform_angles(3, rng);
    const LossGradient exact = classifier_loss_grad(theta, 0.0, batch, tmpl);
    const std::int64_t shots = 1'000'000;
    const LossGradient sampled =
        classifier_loss_grad(theta, 0.0, batch, tmpl, EvalMode::sampled(shots, 3));
    // Each f estimate has sigma <= 1/(2 sqrt(shots)); a shift derivative
    // differences two of them. Component j is (2/B) sum_i r_i df_i with
    // |df_i| <= 1 and |r_i| <= 1.5, so its error is at most
    // 2 (1 + 1.5 sqrt 2) sigma to first order.
    const double sigma = 1.0 / (2.0 * std::sqrt(static_cast<double>(shots)));
    const double component_sigma = 2.0 * (1.0 + 1.5 * std::sqrt(2.0)) * sigma;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        EXPECT_NEAR(sampled.theta.values[j], exact.theta.values[j],
                    3 * component_sigma);
    }
    EXPECT_NEAR(sampled.bias, exact.bias, 3 * 2 * sigma);
}

} // namespace
} // namespace qnnlab
