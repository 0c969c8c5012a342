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

// train-encoder and classify.

#include <algorithm>
#include <fstream>
#include <optional>

#include "command.hpp"
#include "qnnlab_cli/cli.hpp"
#include "qnnlab/csv.hpp"
#include "qnnlab/learn.hpp"
#include "qnnlab/seeding.hpp"
#include "qnnlab/theory.hpp"

namespace qnnlab::cli {

namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kEncoderStream = 1;
constexpr std::uint64_t kTrainStream = 2;
constexpr std::uint64_t kRandomLayoutStream = 3;
constexpr std::uint64_t kEvalTrainStream = 4;
constexpr std::uint64_t kEvalTestStream = 5;

RawDataset load_dataset_cache(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open dataset " + path);
    }
    try {
        return nlohmann::json::parse(in).get<RawDataset>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("dataset " + path + ": " + e.what());
    }
}

LearningRateSchedule schedule_from(const Context &ctx) {
    LearningRateSchedule s{ctx.get<std::vector<double>>("lr_schedule")};
    s.validate();
    return s;
}

// First `per_class` items of each class, in file order; the rest is the
// remainder.
std::pair<RawDataset, RawDataset> take_per_class(const RawDataset &data,
                                                 int per_class) {
    RawDataset head;
    RawDataset rest;
    head.provenance = data.provenance;
    rest.provenance = data.provenance;
    int taken[2] = {0, 0};
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int y = data.labels[i];
        RawDataset &dst = taken[y] < per_class ? head : rest;
        if (&dst == &head) {
            ++taken[y];
        }
        dst.vectors.push_back(data.vectors[i]);
        dst.labels.push_back(y);
    }
    return {head, rest};
}

int run_train_encoder(const Context &ctx) {
    RawDataset data;
    const bool has_vector = ctx.has("input_vector");
    const bool has_dataset = ctx.has("dataset");
    if (has_vector == has_dataset) {
        throw ConfigError("give exactly one of --input-vector and --dataset");
    }
    if (has_vector) {
        data.vectors.push_back(ctx.get<std::vector<double>>("input_vector"));
        data.labels.push_back(0);
    } else {
        data = load_dataset_cache(ctx.get<std::string>("dataset"));
        if (ctx.has("limit")) {
            const auto limit = ctx.get<std::size_t>("limit");
            if (limit < data.size()) {
                data.vectors.resize(limit);
                data.labels.resize(limit);
            }
        }
    }
    data.validate();
    const int n = data.n_qubits();
    const auto L = ctx.get<int>("L");
    const bool exact = ctx.get<bool>("exact_encoding");

    TrainConfig config;
    config.iterations = ctx.get<int>("iters");
    config.schedule = schedule_from(ctx);
    config.seed = derive_seed(ctx.seed(), kEncoderStream);
    config.validate();

    nlohmann::json doc{{"n_qubits", n},
                       {"L", L},
                       {"exact_encoding", exact},
                       {"config", config}};
    std::optional<CircuitSpec> w;
    if (!exact) {
        w = build_alternating_w(n, L);
        doc["w_circuit"] = *w;
        doc["u_circuit"] = build_encoder_u(*w);
    }
    nlohmann::json encodings = nlohmann::json::array();
    std::vector<std::string> summary_rows;
    std::vector<std::string> history_rows;
    double worst_fidelity = 1.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::vector<double> &x = data.vectors[i];
        const StateVector target = StateVector::amplitude_encode(x);
        nlohmann::json entry{{"index", i}, {"label", data.labels[i]}};
        double fidelity = 1.0;
        double alpha_value = 0.0;
        std::string final_f;
        if (exact) {
            fidelity = overlap(target, target);
            alpha_value = alpha(target);
            entry["amplitudes"] = std::vector<double>(
                target.amplitudes().begin(), target.amplitudes().end());
        } else {
            TrainConfig item = config;
            item.seed = derive_seed(config.seed, i);
            const EncoderResult r = train_encoder(x, L, item);
            fidelity = r.fidelity;
            alpha_value = r.alpha;
            final_f = format_double(r.final_f_input);
            entry["beta"] = r.beta;
            entry["final_f_input"] = r.final_f_input;
            entry["f_input_history"] = r.f_input_history;
            for (std::size_t t = 0; t < r.f_input_history.size(); ++t) {
                history_rows.push_back(csv_join({std::to_string(i),
                                                 std::to_string(t),
                                                 format_double(r.f_input_history[t])}));
            }
        }
        entry["fidelity"] = fidelity;
        entry["alpha"] = alpha_value;
        encodings.push_back(entry);
        worst_fidelity = std::min(worst_fidelity, fidelity);
        summary_rows.push_back(csv_join(
            {std::to_string(i), std::to_string(data.labels[i]),
             format_double(fidelity), format_double(alpha_value), final_f}));
    }
    doc["encodings"] = encodings;

    write_json(ctx, "encoder.json", doc);
    if (ctx.format == "csv") {
        write_output(ctx, "encoder.csv",
                     csv_document("index,label,fidelity,alpha,final_f_input",
                                  summary_rows));
        if (!exact) {
            write_output(ctx, "encoder_history.csv",
                         csv_document("index,iteration,f_input", history_rows));
        }
    }

    if (ctx.json_stdout) {
        ctx.out << nlohmann::json{{"encoded", data.size()},
                                  {"min_fidelity", worst_fidelity}}
                       .dump(2)
                << "\n";
    } else {
        ctx.out << "encoded " << data.size() << " vector(s) on " << n
                << " qubits, L=" << L << (exact ? " (exact encoding)" : "")
                << ", min fidelity " << format_double(worst_fidelity) << "\n";
    }
    return kExitOk;
}

ArchitectureKind parse_structured(const std::string &arch, int n_c) {
    if (arch == "tt") {
        return TreeTensor{};
    }
    if (arch == "dtt") {
        return DeformedTreeTensor{};
    }
    if (arch == "sc") {
        return StepControlled{n_c};
    }
    throw ConfigError("unknown architecture '" + arch + "'");
}

ArchitectureKind classifier_kind(const Context &ctx, int n) {
    const auto arch = ctx.get<std::string>("arch");
    const auto n_c = ctx.get<int>("n_c");
    if (arch != "random") {
        return parse_structured(arch, n_c);
    }
    // Gate counts follow the matched architecture unless given explicitly.
    const CircuitSpec matched = build_architecture(
        parse_structured(ctx.get<std::string>("match"), n_c), n);
    RandomLayout layout;
    layout.n_ry = ctx.has("n_ry") ? ctx.get<int>("n_ry")
                                  : static_cast<int>(matched.count(GateKind::RY));
    layout.n_cnot = ctx.has("n_cnot")
                        ? ctx.get<int>("n_cnot")
                        : static_cast<int>(matched.count(GateKind::CNOT));
    layout.seed = ctx.has("random_seed")
                      ? ctx.get<std::uint64_t>("random_seed")
                      : derive_seed(ctx.seed(), kRandomLayoutStream);
    return layout;
}

std::pair<RawDataset, RawDataset> load_classification_data(const Context &ctx,
                                                           int n) {
    const auto per_class = ctx.get<int>("per_class");
    const auto test_per_class = ctx.get<int>("test_per_class");
    const auto source = ctx.get<std::string>("dataset");
    if (source == "synthetic") {
        DatasetSplit split = generate_synthetic_split(
            n, per_class, test_per_class, ctx.get<double>("separation"),
            derive_seed(ctx.seed(), kDataStream));
        return {std::move(split.train), std::move(split.test)};
    }
    if (source != "idx") {
        throw ConfigError("dataset must be synthetic or idx");
    }
    if (n % 2 != 0) {
        throw ConfigError("idx images need an even qubit count (side 2^(n/2))");
    }
    if (!ctx.has("images") || !ctx.has("labels")) {
        throw ConfigError("--dataset idx needs --images and --labels");
    }
    const auto pair = ctx.get<std::vector<int>>("pair");
    if (pair.size() != 2) {
        throw ConfigError("--pair takes two digits, e.g. 0,1");
    }
    const int side = 1 << (n / 2);
    const std::pair<int, int> classes{pair[0], pair[1]};
    const RawDataset pool = downsample_and_filter(
        parse_idx(ctx.get<std::string>("images"), ctx.get<std::string>("labels")),
        classes, side);
    auto [train, rest] = take_per_class(pool, per_class);
    if (ctx.has("test_images") != ctx.has("test_labels")) {
        throw ConfigError("give both --test-images and --test-labels");
    }
    if (ctx.has("test_images")) {
        rest = downsample_and_filter(parse_idx(ctx.get<std::string>("test_images"),
                                               ctx.get<std::string>("test_labels")),
                                     classes, side);
    }
    RawDataset test = take_per_class(rest, test_per_class).first;
    return {std::move(train), std::move(test)};
}

std::string metrics_header() {
    return "pair,arch,n,train_acc,test_acc,f1_0,f1_1,f1_0_undefined,"
           "f1_1_undefined,true0_pred0,true0_pred1,true1_pred0,true1_pred1";
}

// One row per run; the confusion counts refer to the test split.
std::string metrics_row(const std::string &pair, const std::string &arch, int n,
                        const Metrics &train, const Metrics &test) {
    return csv_join({pair, arch, std::to_string(n), format_double(train.accuracy),
                     format_double(test.accuracy), format_double(test.f1_class0),
                     format_double(test.f1_class1),
                     bool_field(test.f1_class0_undefined),
                     bool_field(test.f1_class1_undefined),
                     std::to_string(test.confusion[0][0]),
                     std::to_string(test.confusion[0][1]),
                     std::to_string(test.confusion[1][0]),
                     std::to_string(test.confusion[1][1])});
}

std::string pair_label(const Context &ctx) {
    if (ctx.get<std::string>("dataset") == "synthetic") {
        return "synthetic";
    }
    const auto pair = ctx.get<std::vector<int>>("pair");
    return std::to_string(pair.at(0)) + "-" + std::to_string(pair.at(1));
}

int run_classify(const Context &ctx) {
    const auto n = ctx.get<int>("n");
    const ArchitectureKind kind = classifier_kind(ctx, n);
    auto [train_raw, test_raw] = load_classification_data(ctx, n);

    const auto encoding = ctx.get<std::string>("encoding");
    if (encoding != "exact" && encoding != "trained") {
        throw ConfigError("encoding must be exact or trained");
    }
    TrainConfig encoder_config;
    encoder_config.iterations = ctx.get<int>("encoder_iters");
    encoder_config.schedule = LearningRateSchedule::encoder_default();
    encoder_config.seed = derive_seed(ctx.seed(), kEncoderStream);
    const EncodingMode mode =
        encoding == "exact" ? EncodingMode::Exact : EncodingMode::Trained;
    const auto L = ctx.get<int>("L");
    const LabeledStateSet train = encode_dataset(train_raw, L, encoder_config, mode);
    TrainConfig test_encoder_config = encoder_config;
    test_encoder_config.seed = derive_seed(encoder_config.seed, 1);
    const LabeledStateSet test =
        encode_dataset(test_raw, L, test_encoder_config, mode);

    TrainConfig config;
    config.iterations = ctx.get<int>("iters");
    config.batch_size = ctx.get<int>("batch");
    config.schedule = schedule_from(ctx);
    config.shots_train = ctx.get<std::int64_t>("shots_train");
    config.shots_test = ctx.get<std::int64_t>("shots_test");
    config.seed = derive_seed(ctx.seed(), kTrainStream);

    const TrainedModel model = train_classifier(train, kind, config);
    const Metrics train_metrics =
        evaluate(train, model, config.shots_test,
                 derive_seed(ctx.seed(), kEvalTrainStream));
    const Metrics test_metrics = evaluate(
        test, model, config.shots_test, derive_seed(ctx.seed(), kEvalTestStream));

    std::vector<std::string> history_rows;
    for (std::size_t t = 0; t < model.loss_history.size(); ++t) {
        history_rows.push_back(csv_join(
            {std::to_string(t),
             format_double(config.schedule.rate(static_cast<int>(t),
                                                config.iterations)),
             format_double(model.loss_history[t]),
             format_double(model.error_history[t]),
             format_double(model.grad_norm_history[t]),
             format_double(model.objective_grad_norm_history[t]),
             format_double(model.batch_alpha_history[t]),
             format_double(model.bias_history[t])}));
    }
    const nlohmann::json metrics_doc{{"pair", pair_label(ctx)},
                                     {"arch", model.arch},
                                     {"n", n},
                                     {"train", train_metrics},
                                     {"test", test_metrics},
                                     {"train_size", train.size()},
                                     {"test_size", test.size()}};
    write_json(ctx, "model.json", model);
    if (ctx.format == "csv") {
        write_output(ctx, "history.csv",
                     csv_document("iteration,learning_rate,loss,error,grad_norm,"
                                  "objective_grad_norm,batch_alpha,bias",
                                  history_rows));
        write_output(ctx, "metrics.csv",
                     csv_document(metrics_header(),
                                  {metrics_row(pair_label(ctx), model.arch, n,
                                               train_metrics, test_metrics)}));
    } else {
        write_json(ctx, "results.json",
                   {{"metrics", metrics_doc},
                    {"history",
                     {{"loss", model.loss_history},
                      {"error", model.error_history},
                      {"grad_norm", model.grad_norm_history},
                      {"objective_grad_norm", model.objective_grad_norm_history},
                      {"batch_alpha", model.batch_alpha_history},
                      {"bias", model.bias_history}}}});
    }

    if (ctx.json_stdout) {
        ctx.out << metrics_doc.dump(2) << "\n";
    } else {
        ctx.out << model.arch << " n=" << n << " params="
                << model.tmpl.circuit.n_params << " train=" << train.size()
                << " test=" << test.size() << "\n"
                << "final batch loss "
                << format_double(model.loss_history.empty()
                                     ? 0.0
                                     : model.loss_history.back())
                << "\n"
                << "train accuracy " << format_double(train_metrics.accuracy)
                << "\ntest accuracy " << format_double(test_metrics.accuracy)
                << ", F1 " << format_double(test_metrics.f1_class0) << " / "
                << format_double(test_metrics.f1_class1) << "\n";
    }
    return kExitOk;
}

} // namespace

Command train_encoder_command() {
    return {"train-encoder",
            "train the alternating RY/CZ encoder toward a target vector",
            [](Flags &f) {
                f.add_doubles("--input-vector", "input_vector", nullptr,
                              "target vector of length 2^n, comma separated");
                f.add_string("--dataset", "dataset", nullptr,
                             "JSON dataset cache to encode");
                f.add_int("--limit", "limit", nullptr,
                          "encode only the first N dataset vectors");
                f.add_int("--L", "L", 1, "encoder depth");
                f.add_int("--iters", "iters", 100, "gradient-descent iterations");
                f.add_doubles("--lr-schedule", "lr_schedule",
                              LearningRateSchedule::encoder_default().rates,
                              "learning rates over equal segments");
                f.add_switch("--exact-encoding", "exact_encoding",
                             "skip training and encode amplitudes exactly");
            },
            run_train_encoder};
}

Command classify_command() {
    return {"classify", "train and evaluate a binary QNN classifier",
            [](Flags &f) {
                f.add_string("--dataset", "dataset", "synthetic", "data source",
                             {"synthetic", "idx"});
                f.add_string("--images", "images", nullptr, "IDX training images");
                f.add_string("--labels", "labels", nullptr, "IDX training labels");
                f.add_string("--test-images", "test_images", nullptr,
                             "IDX test images (default: rest of the training file)");
                f.add_string("--test-labels", "test_labels", nullptr,
                             "IDX test labels");
                f.add_ints("--pair", "pair", {0, 1}, "digit pair, e.g. 0,1");
                f.add_string("--arch", "arch", "tt", "classifier circuit",
                             {"tt", "sc", "dtt", "random"});
                f.add_string("--match", "match", "tt",
                             "architecture whose gate counts a random circuit "
                             "copies",
                             {"tt", "sc", "dtt"});
                f.add_int("--n-ry", "n_ry", nullptr, "random circuit RY count");
                f.add_int("--n-cnot", "n_cnot", nullptr,
                          "random circuit CNOT count");
                f.add_uint("--random-seed", "random_seed", nullptr,
                           "random circuit layout seed");
                f.add_int("--n", "n", 4, "number of qubits");
                f.add_int("--n-c", "n_c", 2, "SC control count");
                f.add_int("--shots-train", "shots_train", 200,
                          "shots per training evaluation, 0 = exact");
                f.add_int("--shots-test", "shots_test", 1000,
                          "shots per test prediction, 0 = exact");
                f.add_int("--iters", "iters", 100, "SGD iterations");
                f.add_int("--batch", "batch", 20, "batch size");
                f.add_doubles("--lr-schedule", "lr_schedule",
                              LearningRateSchedule::classifier_default().rates,
                              "learning rates over equal segments");
                f.add_int("--per-class", "per_class", 400,
                          "training items per class");
                f.add_int("--test-per-class", "test_per_class", 400,
                          "test items per class");
                f.add_double("--separation", "separation", 2.0,
                             "synthetic class separation");
                f.add_string("--encoding", "encoding", "exact",
                             "exact amplitudes or trained encoder",
                             {"exact", "trained"});
                f.add_int("--L", "L", 1, "encoder depth when --encoding trained");
                f.add_int("--encoder-iters", "encoder_iters", 100,
                          "encoder iterations when --encoding trained");
            },
            run_classify};
}

} // namespace qnnlab::cli
