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

#include "qnnlab/gradients.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qnnlab {

namespace {

constexpr double kWeightTolerance = 1e-12;

void check_theta(const CircuitSpec &circuit, std::span<const double> theta) {
    if (theta.size() != static_cast<std::size_t>(circuit.n_params)) {
        throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                    " entries, circuit has " +
                                    std::to_string(circuit.n_params) +
                                    " parameters");
    }
}

std::size_t z_mask(const PauliString &p) {
    const std::size_t n = p.size();
    std::size_t mask = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (p.labels()[q] == Pauli::Z) {
            mask |= std::size_t{1} << (n - 1 - q);
        }
    }
    return mask;
}

double sampled_f(const CircuitSpec &circuit, const Observable &observable,
                 const StateVector &input, std::span<const double> theta,
                 std::int64_t shots, std::mt19937_64 &rng) {
    const StateVector out = run_circuit(input, circuit, theta);
    return 0.5 + 0.5 * observable.expectation(out, shots, rng);
}

} // namespace

Observable Observable::z1(int n_qubits) {
    return Observable{{{PauliString::single_z(n_qubits, 1), 1.0}}};
}

Observable Observable::mean_z(int n_qubits) {
    Observable obs;
    for (int q = 1; q <= n_qubits; ++q) {
        obs.terms.push_back({PauliString::single_z(n_qubits, q),
                             1.0 / static_cast<double>(n_qubits)});
    }
    return obs;
}

void Observable::validate(int n_qubits) const {
    if (terms.empty()) {
        throw std::invalid_argument("observable has no terms");
    }
    double total = 0.0;
    for (const WeightedPauli &t : terms) {
        if (t.pauli.size() != static_cast<std::size_t>(n_qubits)) {
            throw std::invalid_argument("observable length does not match " +
                                        std::to_string(n_qubits) + " qubits");
        }
        if (t.weight < 0.0) {
            throw std::invalid_argument("observable weights must be >= 0");
        }
        total += t.weight;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw std::invalid_argument("observable weights must sum to 1");
    }
}

bool Observable::is_diagonal() const {
    for (const WeightedPauli &t : terms) {
        if (!t.pauli.is_diagonal()) {
            return false;
        }
    }
    return true;
}

double Observable::expectation(const StateVector &state) const {
    double acc = 0.0;
    for (const WeightedPauli &t : terms) {
        acc += t.weight * pauli_expectation(state, t.pauli);
    }
    return acc;
}

double Observable::expectation(const StateVector &state, std::int64_t shots,
                               std::mt19937_64 &rng) const {
    if (!is_diagonal()) {
        throw std::invalid_argument(
            "shot estimates need observables built from I and Z only");
    }
    std::vector<std::size_t> masks;
    masks.reserve(terms.size());
    for (const WeightedPauli &t : terms) {
        if (t.pauli.size() != static_cast<std::size_t>(state.n_qubits())) {
            throw std::invalid_argument("observable length mismatch");
        }
        masks.push_back(z_mask(t.pauli));
    }
    double acc = 0.0;
    for (std::size_t idx : sample_indices(state, shots, rng)) {
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const bool odd = (std::popcount(idx & masks[k]) & 1) != 0;
            acc += odd ? -terms[k].weight : terms[k].weight;
        }
    }
    return acc / static_cast<double>(shots);
}

double GradientVector::norm_squared() const {
    double acc = 0.0;
    for (double v : values) {
        acc += v * v;
    }
    return acc;
}

double evaluate_f(const CircuitSpec &circuit, const Observable &observable,
                  const StateVector &input, std::span<const double> theta) {
    check_theta(circuit, theta);
    const StateVector out = run_circuit(input, circuit, theta);
    return 0.5 + 0.5 * observable.expectation(out);
}

double objective_value(const Objective &obj, std::span<const double> theta) {
    return evaluate_f(obj.circuit, obj.observable, obj.input, theta);
}

double objective_value(const Objective &obj, std::span<const double> theta,
                       std::int64_t shots, std::mt19937_64 &rng) {
    check_theta(obj.circuit, theta);
    return sampled_f(obj.circuit, obj.observable, obj.input, theta, shots, rng);
}

double parameter_shift_partial(const CircuitSpec &circuit,
                               const Observable &observable,
                               const StateVector &input,
                               std::span<const double> theta, int slot) {
    check_theta(circuit, theta);
    if (slot < 0 || slot >= circuit.n_params) {
        throw std::out_of_range("slot outside the parameter vector");
    }
    std::vector<double> shifted(theta.begin(), theta.end());
    const auto j = static_cast<std::size_t>(slot);
    shifted[j] = theta[j] + kShiftAngle;
    const double plus = evaluate_f(circuit, observable, input, shifted);
    shifted[j] = theta[j] - kShiftAngle;
    const double minus = evaluate_f(circuit, observable, input, shifted);
    return plus - minus;
}

GradientVector parameter_shift_grad(const Objective &obj,
                                    std::span<const double> theta,
                                    EvalMode mode) {
    check_theta(obj.circuit, theta);
    GradientVector grad;
    grad.mode = mode;
    if (mode.is_exact()) {
        grad.values.resize(theta.size());
        for (int j = 0; j < obj.circuit.n_params; ++j) {
            grad.values[static_cast<std::size_t>(j)] = parameter_shift_partial(
                obj.circuit, obj.observable, obj.input, theta, j);
        }
        return grad;
    }
    std::mt19937_64 rng(mode.seed);
    grad.values = parameter_shift_grad(obj, theta, mode.shots, rng);
    return grad;
}

std::vector<double> parameter_shift_grad(const Objective &obj,
                                         std::span<const double> theta,
                                         std::int64_t shots,
                                         std::mt19937_64 &rng) {
    check_theta(obj.circuit, theta);
    std::vector<double> values(theta.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        shifted[j] = theta[j] + kShiftAngle;
        const double plus = sampled_f(obj.circuit, obj.observable, obj.input,
                                      shifted, shots, rng);
        shifted[j] = theta[j] - kShiftAngle;
        const double minus = sampled_f(obj.circuit, obj.observable, obj.input,
                                       shifted, shots, rng);
        shifted[j] = theta[j];
        values[j] = plus - minus;
    }
    return values;
}

GradientVector finite_difference_grad(const Objective &obj,
                                      std::span<const double> theta,
                                      double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be > 0");
    }
    check_theta(obj.circuit, theta);
    GradientVector grad;
    grad.values.resize(theta.size());
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        shifted[j] = theta[j] + h;
        const double plus = objective_value(obj, shifted);
        shifted[j] = theta[j] - h;
        const double minus = objective_value(obj, shifted);
        shifted[j] = theta[j];
        grad.values[j] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

double classifier_loss(std::span<const double> theta, double b,
                       std::span<const LabeledState> batch,
                       const ObjectiveTemplate &tmpl) {
    if (batch.empty()) {
        throw std::invalid_argument("classifier loss needs a non-empty batch");
    }
    double acc = 0.0;
    for (const LabeledState &item : batch) {
        const double r =
            evaluate_f(tmpl.circuit, tmpl.observable, item.state, theta) -
            item.label + b;
        acc += r * r;
    }
    return acc / static_cast<double>(batch.size());
}

LossGradient classifier_loss_grad(std::span<const double> theta, double b,
                                  std::span<const LabeledState> batch,
                                  const ObjectiveTemplate &tmpl,
                                  EvalMode mode) {
    if (batch.empty()) {
        throw std::invalid_argument("classifier loss needs a non-empty batch");
    }
    check_theta(tmpl.circuit, theta);
    std::mt19937_64 rng(mode.seed);
    const double scale = 2.0 / static_cast<double>(batch.size());

    LossGradient out;
    out.theta.mode = mode;
    out.theta.values.assign(theta.size(), 0.0);
    for (const LabeledState &item : batch) {
        const Objective obj = tmpl.bind(item.state);
        double f = 0.0;
        std::vector<double> df;
        if (mode.is_exact()) {
            f = objective_value(obj, theta);
            df = parameter_shift_grad(obj, theta).values;
        } else {
            f = objective_value(obj, theta, mode.shots, rng);
            df = parameter_shift_grad(obj, theta, mode.shots, rng);
        }
        const double r = f - item.label + b;
        out.loss += r * r;
        if ((f + b >= 0.5 ? 1 : 0) != item.label) {
            out.batch_error += 1.0;
        }
        out.bias += scale * r;
        double df_norm = 0.0;
        for (std::size_t j = 0; j < df.size(); ++j) {
            out.theta.values[j] += scale * r * df[j];
            df_norm += df[j] * df[j];
        }
        out.mean_objective_grad_norm += df_norm;
    }
    out.loss /= static_cast<double>(batch.size());
    out.mean_objective_grad_norm /= static_cast<double>(batch.size());
    out.batch_error /= static_cast<double>(batch.size());
    return out;
}

} // namespace qnnlab
