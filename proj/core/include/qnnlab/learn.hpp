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
 * Encoder training, classifier training with SGD on the squared loss,
 * prediction and metrics.
 */
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnlab/architectures.hpp"
#include "qnnlab/data.hpp"
#include "qnnlab/gradients.hpp"

namespace qnnlab {

/// Piecewise-constant rates over equal consecutive segments of [0, T).
struct LearningRateSchedule {
    std::vector<double> rates;

    static LearningRateSchedule classifier_default() {
        return {{1.00, 0.75, 0.50, 0.25}};
    }
    static LearningRateSchedule encoder_default() {
        return {{0.100, 0.075, 0.050, 0.025}};
    }

    /// Rate at iteration t of T: rates[t * K / T] for K rates.
    [[nodiscard]] double rate(int t, int total) const;
    void validate() const;
};

struct TrainConfig {
    int iterations{100};
    int batch_size{20};
    LearningRateSchedule schedule{LearningRateSchedule::classifier_default()};
    /// 0 means exact expectations.
    std::int64_t shots_train{0};
    std::int64_t shots_test{0};
    std::uint64_t seed{0};

    void validate() const;
};

void to_json(nlohmann::json &j, const TrainConfig &c);
void from_json(const nlohmann::json &j, TrainConfig &c);

struct EncoderResult {
    CircuitSpec w_circuit;
    CircuitSpec u_circuit;
    std::vector<double> beta;
    /// f_input at the start of each iteration; length T.
    std::vector<double> f_input_history;
    double final_f_input{0.0};
    /// |<x/||x|| | U(beta) |0...0>|.
    double fidelity{0.0};
    double alpha{0.0};
};

/// f_input(beta) = (1/n) sum_i <Z_i> on W(beta)|x>, in [-1, 1].
[[nodiscard]] double encoder_f_input(const CircuitSpec &w,
                                     const StateVector &x,
                                     std::span<const double> beta);

/// Full-batch gradient descent on f_input toward -1, beta_0 uniform in
/// [0, 2pi). Uses config.iterations, config.schedule and config.seed.
[[nodiscard]] EncoderResult train_encoder(std::span<const double> x, int L,
                                          const TrainConfig &config);

/// Encoded corpus. Fidelities, alphas and betas are filled when available.
struct LabeledStateSet {
    std::vector<LabeledState> items;
    std::vector<double> fidelities;
    std::vector<double> alphas;
    std::vector<std::vector<double>> betas;

    [[nodiscard]] std::size_t size() const noexcept { return items.size(); }
};

enum class EncodingMode { Exact, Trained };

/// Exact mode normalizes each vector directly. Trained mode runs
/// train_encoder per vector with seed derive_seed(config.seed, index).
[[nodiscard]] LabeledStateSet encode_dataset(const RawDataset &data, int L,
                                             const TrainConfig &config,
                                             EncodingMode mode);

/// Z_1 readout for tt/sc/dtt, mean Z over all qubits for random circuits.
[[nodiscard]] ObjectiveTemplate
classifier_template(const ArchitectureKind &kind, int n);

struct TrainedModel {
    std::string arch;
    ObjectiveTemplate tmpl;
    std::vector<double> theta;
    double bias{0.0};
    TrainConfig config;
    std::vector<double> initial_theta;
    /// Per iteration t, evaluated at (theta_t, b_t) on batch I_t.
    std::vector<double> loss_history;
    std::vector<double> error_history;
    std::vector<double> grad_norm_history;
    std::vector<double> objective_grad_norm_history;
    std::vector<double> batch_alpha_history;
    std::vector<std::vector<double>> theta_history;
    std::vector<double> bias_history;
    std::vector<std::vector<int>> batch_history;
};

/// SGD on mean (f + b - y)^2 with b_0 = 0, theta_0 uniform in [0, 2pi).
[[nodiscard]] TrainedModel train_classifier(const LabeledStateSet &data,
                                            const ArchitectureKind &kind,
                                            const TrainConfig &config);

/// Class 1 iff value >= 1/2 (ties go to class 1).
[[nodiscard]] int classify_value(double f_plus_b);

/// Exact when shots == 0, otherwise samples from `rng`.
[[nodiscard]] int predict(const StateVector &state, const TrainedModel &model,
                          std::int64_t shots, std::mt19937_64 &rng);

struct Metrics {
    double accuracy{0.0};
    double f1_class0{0.0};
    double f1_class1{0.0};
    bool f1_class0_undefined{false};
    bool f1_class1_undefined{false};
    /// confusion[true][predicted].
    std::array<std::array<std::int64_t, 2>, 2> confusion{};
};

[[nodiscard]] Metrics metrics_from_predictions(std::span<const int> truth,
                                               std::span<const int> predicted);

/// Predicts every item with `shots` (0 = exact) from one stream seeded with
/// `seed`.
[[nodiscard]] Metrics evaluate(const LabeledStateSet &test,
                               const TrainedModel &model, std::int64_t shots,
                               std::uint64_t seed);

void to_json(nlohmann::json &j, const Metrics &m);
void to_json(nlohmann::json &j, const TrainedModel &m);
void to_json(nlohmann::json &j, const EncoderResult &r);

} // namespace qnnlab
