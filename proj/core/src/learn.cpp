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

#include "qnnlab/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qnnlab/seeding.hpp"
#include "qnnlab/theory.hpp"

namespace qnnlab {

namespace {

std::vector<double> uniform_angles(int count, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (double &a : out) {
        a = angle(rng);
    }
    return out;
}

double f1_score(std::int64_t tp, std::int64_t fp, std::int64_t fn,
                bool &undefined) {
    undefined = (tp + fp == 0) || (tp + fn == 0);
    const std::int64_t denom = 2 * tp + fp + fn;
    return (undefined || denom == 0)
               ? 0.0
               : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

} // namespace

double LearningRateSchedule::rate(int t, int total) const {
    if (rates.empty() || total < 1 || t < 0 || t >= total) {
        throw std::out_of_range("schedule queried outside [0, T)");
    }
    const auto k = static_cast<std::int64_t>(rates.size());
    const auto segment = static_cast<std::size_t>(
        std::min<std::int64_t>(k - 1, static_cast<std::int64_t>(t) * k / total));
    return rates[segment];
}

void LearningRateSchedule::validate() const {
    if (rates.empty()) {
        throw std::invalid_argument("learning-rate schedule is empty");
    }
    for (double r : rates) {
        if (!(r > 0.0)) {
            throw std::invalid_argument("learning rates must be > 0");
        }
    }
}

void TrainConfig::validate() const {
    if (iterations < 0) {
        throw std::invalid_argument("iterations must be >= 0");
    }
    if (batch_size < 1) {
        throw std::invalid_argument("batch size must be >= 1");
    }
    if (shots_train < 0 || shots_test < 0) {
        throw std::invalid_argument("shot counts must be >= 0");
    }
    schedule.validate();
}

void to_json(nlohmann::json &j, const TrainConfig &c) {
    nlohmann::json segments = nlohmann::json::array();
    const auto k = static_cast<int>(c.schedule.rates.size());
    for (int s = 0; s < k; ++s) {
        // Segment s covers [s*T/K, (s+1)*T/K) in integer arithmetic.
        const int start = (s * c.iterations + k - 1) / k;
        const int end = ((s + 1) * c.iterations + k - 1) / k;
        segments.push_back(
            {{"start", start}, {"end", end}, {"rate", c.schedule.rates[s]}});
    }
    j = nlohmann::json{{"iterations", c.iterations},
                       {"batch_size", c.batch_size},
                       {"lr_schedule", c.schedule.rates},
                       {"lr_segments", segments},
                       {"shots_train", c.shots_train},
                       {"shots_test", c.shots_test},
                       {"seed", c.seed}};
}

void from_json(const nlohmann::json &j, TrainConfig &c) {
    c = TrainConfig{};
    c.iterations = j.value("iterations", c.iterations);
    c.batch_size = j.value("batch_size", c.batch_size);
    if (j.contains("lr_schedule")) {
        c.schedule.rates = j.at("lr_schedule").get<std::vector<double>>();
    }
    c.shots_train = j.value("shots_train", c.shots_train);
    c.shots_test = j.value("shots_test", c.shots_test);
    c.seed = j.value("seed", c.seed);
    c.validate();
}

double encoder_f_input(const CircuitSpec &w, const StateVector &x,
                       std::span<const double> beta) {
    return Observable::mean_z(w.n_qubits).expectation(run_circuit(x, w, beta));
}

EncoderResult train_encoder(std::span<const double> x, int L,
                            const TrainConfig &config) {
    config.validate();
    const StateVector target = StateVector::amplitude_encode(x);
    const int n = target.n_qubits();
    EncoderResult result;
    result.w_circuit = build_alternating_w(n, L);
    result.u_circuit = build_encoder_u(result.w_circuit);

    std::mt19937_64 rng(config.seed);
    result.beta = uniform_angles(result.w_circuit.n_params, rng);

    // f = 1/2 + 1/2 f_input, so d f_input = 2 df = f_input(+) - f_input(-).
    const Objective obj{result.w_circuit, Observable::mean_z(n), target};
    for (int t = 0; t < config.iterations; ++t) {
        result.f_input_history.push_back(
            2.0 * objective_value(obj, result.beta) - 1.0);
        const GradientVector grad = parameter_shift_grad(obj, result.beta);
        const double eta = config.schedule.rate(t, config.iterations);
        for (std::size_t k = 0; k < result.beta.size(); ++k) {
            result.beta[k] -= eta * 2.0 * grad.values[k];
        }
    }
    result.final_f_input = encoder_f_input(result.w_circuit, target, result.beta);
    const StateVector prepared =
        run_circuit(StateVector::zeros(n), result.u_circuit, result.beta);
    result.fidelity = overlap(target, prepared);
    result.alpha = alpha(prepared);
    return result;
}

LabeledStateSet encode_dataset(const RawDataset &data, int L,
                               const TrainConfig &config, EncodingMode mode) {
    data.validate();
    LabeledStateSet out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto &x = data.vectors[i];
        if (mode == EncodingMode::Exact) {
            StateVector s = StateVector::amplitude_encode(x);
            out.alphas.push_back(alpha(s));
            out.fidelities.push_back(1.0);
            out.items.push_back({std::move(s), data.labels[i]});
            continue;
        }
        TrainConfig item_config = config;
        item_config.seed = derive_seed(config.seed, i);
        const EncoderResult r = train_encoder(x, L, item_config);
        StateVector prepared = run_circuit(
            StateVector::zeros(r.u_circuit.n_qubits), r.u_circuit, r.beta);
        out.alphas.push_back(r.alpha);
        out.fidelities.push_back(r.fidelity);
        out.betas.push_back(r.beta);
        out.items.push_back({std::move(prepared), data.labels[i]});
    }
    return out;
}

ObjectiveTemplate classifier_template(const ArchitectureKind &kind, int n) {
    const CircuitSpec circuit = build_architecture(kind, n);
    if (std::holds_alternative<RandomLayout>(kind)) {
        return {circuit, Observable::mean_z(n)};
    }
    return {circuit, Observable::z1(n)};
}

TrainedModel train_classifier(const LabeledStateSet &data,
                              const ArchitectureKind &kind,
                              const TrainConfig &config) {
    config.validate();
    if (data.items.empty()) {
        throw std::invalid_argument("classifier training needs data");
    }
    if (static_cast<std::size_t>(config.batch_size) > data.size()) {
        throw std::invalid_argument("batch size exceeds the dataset size");
    }
    for (const LabeledState &item : data.items) {
        if (item.label != 0 && item.label != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
    }
    const int n = data.items.front().state.n_qubits();

    TrainedModel model;
    model.arch = architecture_name(kind);
    model.tmpl = classifier_template(kind, n);
    model.config = config;

    std::mt19937_64 rng(config.seed);
    model.theta = uniform_angles(model.tmpl.circuit.n_params, rng);
    model.initial_theta = model.theta;
    model.bias = 0.0;

    std::vector<int> all(data.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<LabeledState> batch;
    for (int t = 0; t < config.iterations; ++t) {
        std::vector<int> picked;
        picked.reserve(static_cast<std::size_t>(config.batch_size));
        std::sample(all.begin(), all.end(), std::back_inserter(picked),
                    config.batch_size, rng);
        batch.clear();
        double alpha_sum = 0.0;
        for (int idx : picked) {
            const LabeledState &item = data.items[static_cast<std::size_t>(idx)];
            batch.push_back(item);
            alpha_sum += alpha(item.state);
        }
        const EvalMode mode =
            config.shots_train > 0
                ? EvalMode::sampled(config.shots_train,
                                    derive_seed(config.seed, t + 1))
                : EvalMode::exact();
        const LossGradient g =
            classifier_loss_grad(model.theta, model.bias, batch, model.tmpl, mode);

        model.theta_history.push_back(model.theta);
        model.bias_history.push_back(model.bias);
        model.batch_history.push_back(picked);
        model.loss_history.push_back(g.loss);
        model.error_history.push_back(g.batch_error);
        model.grad_norm_history.push_back(std::sqrt(g.theta.norm_squared()));
        model.objective_grad_norm_history.push_back(g.mean_objective_grad_norm);
        model.batch_alpha_history.push_back(alpha_sum /
                                            static_cast<double>(batch.size()));

        const double eta = config.schedule.rate(t, config.iterations);
        for (std::size_t k = 0; k < model.theta.size(); ++k) {
            model.theta[k] -= eta * g.theta.values[k];
        }
        model.bias -= eta * g.bias;
    }
    return model;
}

int classify_value(double f_plus_b) { return f_plus_b >= 0.5 ? 1 : 0; }

int predict(const StateVector &state, const TrainedModel &model,
            std::int64_t shots, std::mt19937_64 &rng) {
    const Objective obj = model.tmpl.bind(state);
    const double f = shots > 0 ? objective_value(obj, model.theta, shots, rng)
                               : objective_value(obj, model.theta);
    return classify_value(f + model.bias);
}

Metrics metrics_from_predictions(std::span<const int> truth,
                                 std::span<const int> predicted) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("prediction count mismatch");
    }
    Metrics m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++m.confusion[static_cast<std::size_t>(truth[i])]
                     [static_cast<std::size_t>(predicted[i])];
    }
    const std::int64_t correct = m.confusion[0][0] + m.confusion[1][1];
    m.accuracy = truth.empty() ? 0.0
                               : static_cast<double>(correct) /
                                     static_cast<double>(truth.size());
    m.f1_class0 = f1_score(m.confusion[0][0], m.confusion[1][0],
                           m.confusion[0][1], m.f1_class0_undefined);
    m.f1_class1 = f1_score(m.confusion[1][1], m.confusion[0][1],
                           m.confusion[1][0], m.f1_class1_undefined);
    return m;
}

Metrics evaluate(const LabeledStateSet &test, const TrainedModel &model,
                 std::int64_t shots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> truth;
    std::vector<int> predicted;
    for (const LabeledState &item : test.items) {
        truth.push_back(item.label);
        predicted.push_back(predict(item.state, model, shots, rng));
    }
    return metrics_from_predictions(truth, predicted);
}

void to_json(nlohmann::json &j, const Metrics &m) {
    j = nlohmann::json{{"accuracy", m.accuracy},
                       {"f1_0", m.f1_class0},
                       {"f1_1", m.f1_class1},
                       {"f1_0_undefined", m.f1_class0_undefined},
                       {"f1_1_undefined", m.f1_class1_undefined},
                       {"confusion",
                        {{m.confusion[0][0], m.confusion[0][1]},
                         {m.confusion[1][0], m.confusion[1][1]}}}};
}

void to_json(nlohmann::json &j, const TrainedModel &m) {
    nlohmann::json terms = nlohmann::json::array();
    for (const WeightedPauli &t : m.tmpl.observable.terms) {
        terms.push_back({{"pauli", t.pauli.str()}, {"weight", t.weight}});
    }
    j = nlohmann::json{{"arch", m.arch},
                       {"circuit", m.tmpl.circuit},
                       {"observable", terms},
                       {"theta", m.theta},
                       {"bias", m.bias},
                       {"initial_theta", m.initial_theta},
                       {"config", m.config},
                       {"loss_history", m.loss_history},
                       {"error_history", m.error_history},
                       {"grad_norm_history", m.grad_norm_history},
                       {"objective_grad_norm_history",
                        m.objective_grad_norm_history},
                       {"batch_alpha_history", m.batch_alpha_history}};
}

void to_json(nlohmann::json &j, const EncoderResult &r) {
    j = nlohmann::json{{"n_qubits", r.w_circuit.n_qubits},
                       {"w_circuit", r.w_circuit},
                       {"beta", r.beta},
                       {"f_input_history", r.f_input_history},
                       {"final_f_input", r.final_f_input},
                       {"fidelity", r.fidelity},
                       {"alpha", r.alpha}};
}

} // namespace qnnlab
