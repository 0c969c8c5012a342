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
 * Objective f = 1/2 + 1/2 * sum_i w_i <O_i>, its parameter-shift gradient,
 * a central-difference oracle, and the squared classifier loss.
 */
#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "qnnlab/circuit.hpp"

namespace qnnlab {

/// Scale of the RY generator: the kernel applies exp(-i * scale * theta * Y).
inline constexpr double kRyAngleScale = 1.0;

/// Two-term shift that is exact for a generator with eigenvalues
/// +-kRyAngleScale.
inline constexpr double kShiftAngle = std::numbers::pi / (4.0 * kRyAngleScale);

static_assert(kRyAngleScale == 1.0 && kShiftAngle == std::numbers::pi / 4.0,
              "the +-pi/4 shift is tied to the full-angle RY kernel");

inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

struct WeightedPauli {
    PauliString pauli;
    double weight{1.0};
};

/// Convex combination of Pauli strings.
struct Observable {
    std::vector<WeightedPauli> terms;

    /// Z on qubit 1.
    static Observable z1(int n_qubits);
    /// (1/n) sum_i Z_i.
    static Observable mean_z(int n_qubits);

    /// Non-empty, matching lengths, weights >= 0 summing to 1.
    void validate(int n_qubits) const;
    [[nodiscard]] bool is_diagonal() const;
    /// sum_i w_i <O_i> in [-1, 1].
    [[nodiscard]] double expectation(const StateVector &state) const;
    /// Same quantity estimated from a bitstring sample. Diagonal terms only.
    [[nodiscard]] double expectation(const StateVector &state,
                                     std::int64_t shots,
                                     std::mt19937_64 &rng) const;
};

/// Exact statevector expectations, or `shots` samples per evaluation drawn
/// from a stream seeded with `seed`.
struct EvalMode {
    std::int64_t shots{0};
    std::uint64_t seed{0};

    static EvalMode exact() { return {}; }
    static EvalMode sampled(std::int64_t shots, std::uint64_t seed) {
        return {shots, seed};
    }
    [[nodiscard]] bool is_exact() const noexcept { return shots == 0; }
};

struct Objective {
    CircuitSpec circuit;
    Observable observable;
    StateVector input;
};

/// Circuit and readout without the input state; used for classifiers.
struct ObjectiveTemplate {
    CircuitSpec circuit;
    Observable observable;

    [[nodiscard]] Objective bind(const StateVector &input) const {
        return {circuit, observable, input};
    }
};

struct GradientVector {
    std::vector<double> values;
    EvalMode mode;

    [[nodiscard]] double norm_squared() const;
};

/// Scalar f(theta) = 1/2 + 1/2 <O> on V(theta)|input>.
[[nodiscard]] double objective_value(const Objective &obj,
                                     std::span<const double> theta);

/// Sampled estimate of the same quantity; draws from `rng`.
[[nodiscard]] double objective_value(const Objective &obj,
                                     std::span<const double> theta,
                                     std::int64_t shots, std::mt19937_64 &rng);

/// Core evaluator shared by every entry point.
[[nodiscard]] double evaluate_f(const CircuitSpec &circuit,
                                const Observable &observable,
                                const StateVector &input,
                                std::span<const double> theta);

/// df/dtheta_j = f(theta + pi/4 e_j) - f(theta - pi/4 e_j).
[[nodiscard]] GradientVector
parameter_shift_grad(const Objective &obj, std::span<const double> theta,
                     EvalMode mode = EvalMode::exact());

/// Shift-rule gradient in shot mode drawing from a caller-owned stream. The
/// plus and minus evaluation of each slot use independent samples.
[[nodiscard]] std::vector<double>
parameter_shift_grad(const Objective &obj, std::span<const double> theta,
                     std::int64_t shots, std::mt19937_64 &rng);

/// Single-slot shift-rule derivative, exact.
[[nodiscard]] double parameter_shift_partial(const CircuitSpec &circuit,
                                             const Observable &observable,
                                             const StateVector &input,
                                             std::span<const double> theta,
                                             int slot);

/// Central differences (f(theta + h e_j) - f(theta - h e_j)) / 2h.
[[nodiscard]] GradientVector
finite_difference_grad(const Objective &obj, std::span<const double> theta,
                       double h = kDefaultFiniteDifferenceStep);

struct LabeledState {
    StateVector state;
    int label{0};
};

/// mean_i (f_i - y_i + b)^2 over the batch, exact expectations.
[[nodiscard]] double classifier_loss(std::span<const double> theta, double b,
                                     std::span<const LabeledState> batch,
                                     const ObjectiveTemplate &tmpl);

struct LossGradient {
    GradientVector theta;
    double bias{0.0};
    double loss{0.0};
    /// Mean over the batch of ||grad_theta f_i||^2.
    double mean_objective_grad_norm{0.0};
    /// Fraction of the batch misclassified by the rule f + b >= 1/2.
    double batch_error{0.0};
};

/// Chain rule through the shift-rule derivative of each f_i. In shot mode
/// every circuit evaluation draws mode.shots fresh samples from one stream
/// seeded with mode.seed, in a fixed order.
[[nodiscard]] LossGradient
classifier_loss_grad(std::span<const double> theta, double b,
                     std::span<const LabeledState> batch,
                     const ObjectiveTemplate &tmpl,
                     EvalMode mode = EvalMode::exact());

} // namespace qnnlab
