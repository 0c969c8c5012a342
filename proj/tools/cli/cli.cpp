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

#include "qnnlab_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "command.hpp"
#include "qnnlab/data.hpp"
#include "qnnlab/expectation.hpp"

namespace qnnlab::cli {

namespace {

constexpr const char *kDefaultOutDir = "qnnlab_out";
constexpr const char *kSnapshotName = "config.json";

nlohmann::json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
}

// Accepts a snapshot {"schema_version", "command", "settings"} or a bare
// object of settings.
nlohmann::json settings_from_file(const std::filesystem::path &path,
                                  const std::string &command) {
    const nlohmann::json doc = read_json_file(path);
    if (!doc.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    if (!doc.contains("settings")) {
        return doc;
    }
    if (doc.value("schema_version", kConfigSchemaVersion) !=
        kConfigSchemaVersion) {
        throw ConfigError("unsupported config schema_version " +
                          doc.at("schema_version").dump());
    }
    if (doc.contains("command") && doc.at("command") != command) {
        throw ConfigError("config file was written by '" +
                          doc.at("command").get<std::string>() +
                          "', not '" + command + "'");
    }
    return doc.at("settings");
}

void merge_known(nlohmann::json &settings, const nlohmann::json &extra) {
    for (const auto &[key, value] : extra.items()) {
        if (!settings.contains(key)) {
            throw ConfigError("unknown setting '" + key + "'");
        }
        settings[key] = value;
    }
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32U) ^ rd();
}

std::filesystem::path resolve_out_dir(const std::string &flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char *env = std::getenv(kOutDirEnv); env != nullptr && *env) {
        return env;
    }
    return kDefaultOutDir;
}

} // namespace

template <class T>
void Flags::bind(const std::string &name, const std::string &key,
                 nlohmann::json fallback, const std::string &help,
                 const std::function<void(CLI::Option *)> &tweak) {
    auto holder = std::make_shared<T>();
    CLI::Option *opt = app_->add_option(name, *holder, help);
    if (!fallback.is_null()) {
        opt->default_str(fallback.is_string() ? fallback.get<std::string>()
                                              : fallback.dump());
    }
    if (tweak) {
        tweak(opt);
    }
    defaults_[key] = std::move(fallback);
    bindings_.push_back({opt, key, [holder] { return nlohmann::json(*holder); }});
    storage_.push_back(holder);
}

void Flags::add_int(const std::string &name, const std::string &key,
                    nlohmann::json fallback, const std::string &help) {
    bind<std::int64_t>(name, key, std::move(fallback), help, {});
}

void Flags::add_uint(const std::string &name, const std::string &key,
                     nlohmann::json fallback, const std::string &help) {
    bind<std::uint64_t>(name, key, std::move(fallback), help, {});
}

void Flags::add_double(const std::string &name, const std::string &key,
                       nlohmann::json fallback, const std::string &help) {
    bind<double>(name, key, std::move(fallback), help, {});
}

void Flags::add_string(const std::string &name, const std::string &key,
                       nlohmann::json fallback, const std::string &help,
                       std::vector<std::string> choices) {
    bind<std::string>(name, key, std::move(fallback), help,
                      [choices](CLI::Option *opt) {
                          if (!choices.empty()) {
                              opt->check(CLI::IsMember(choices));
                          }
                      });
}

void Flags::add_doubles(const std::string &name, const std::string &key,
                        nlohmann::json fallback, const std::string &help) {
    bind<std::vector<double>>(name, key, std::move(fallback), help,
                              [](CLI::Option *opt) { opt->delimiter(','); });
}

void Flags::add_ints(const std::string &name, const std::string &key,
                     nlohmann::json fallback, const std::string &help) {
    bind<std::vector<int>>(name, key, std::move(fallback), help,
                           [](CLI::Option *opt) { opt->delimiter(','); });
}

void Flags::add_switch(const std::string &name, const std::string &key,
                       const std::string &help) {
    auto holder = std::make_shared<bool>(false);
    CLI::Option *opt = app_->add_flag(name, *holder, help);
    defaults_[key] = false;
    bindings_.push_back({opt, key, [holder] { return nlohmann::json(*holder); }});
    storage_.push_back(holder);
}

void Flags::overlay(nlohmann::json &settings) const {
    for (const Binding &b : bindings_) {
        if (b.option->count() > 0) {
            settings[b.key] = b.value();
        }
    }
}

void write_output(const Context &ctx, const std::string &name,
                  const std::string &content) {
    const std::filesystem::path path = ctx.out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

void write_json(const Context &ctx, const std::string &name,
                const nlohmann::json &value) {
    write_output(ctx, name, value.dump(2) + "\n");
}

std::string csv_document(const std::string &header,
                         const std::vector<std::string> &rows) {
    std::string doc = header + "\n";
    for (const std::string &row : rows) {
        doc += row;
        doc += '\n';
    }
    return doc;
}

std::string bool_field(bool b) { return b ? "true" : "false"; }

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"qnnlab: tree-tensor and step-controlled quantum neural "
                 "networks on a statevector simulator"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", "qnnlab 0.1.0");

    struct Entry {
        Command command;
        CLI::App *sub;
        std::unique_ptr<Flags> flags;
        std::string config_path;
        std::string out_flag;
        bool json_stdout{false};
    };
    std::vector<Entry> entries;
    for (Command c : {lemma_check_command(), verify_bounds_command(),
                      barren_plateau_command(), train_encoder_command(),
                      classify_command()}) {
        entries.push_back({std::move(c), nullptr, nullptr, {}, {}, false});
    }
    for (Entry &e : entries) {
        e.sub = app.add_subcommand(e.command.name, e.command.description);
        e.flags = std::make_unique<Flags>(e.sub);
        e.sub->add_option("--config", e.config_path,
                          "JSON settings file or a config.json snapshot; "
                          "command-line flags take precedence");
        e.sub->add_option("--out", e.out_flag,
                          std::string("output directory (default $") +
                              kOutDirEnv + " or " + kDefaultOutDir + ")");
        e.sub->add_flag("--json", e.json_stdout,
                        "print a JSON summary on stdout");
        e.flags->add_uint("--seed", "seed", nullptr,
                          "base seed; drawn at random and recorded when absent");
        e.flags->add_string("--format", "format", "csv",
                            "table format of the outputs", {"csv", "json"});
        e.command.declare(*e.flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    Entry *chosen = nullptr;
    for (Entry &e : entries) {
        if (e.sub->parsed()) {
            chosen = &e;
        }
    }
    if (chosen == nullptr) {
        err << "no subcommand given\n";
        return kExitConfigError;
    }

    Context ctx{chosen->command.name, {}, {}, {}, chosen->json_stdout, out, err};
    try {
        ctx.settings = chosen->flags->defaults();
        if (!chosen->config_path.empty()) {
            merge_known(ctx.settings, settings_from_file(chosen->config_path,
                                                         ctx.command));
        }
        chosen->flags->overlay(ctx.settings);
        if (ctx.settings.at("seed").is_null()) {
            ctx.settings["seed"] = fresh_seed();
        }
        ctx.format = ctx.get<std::string>("format");
        if (ctx.format != "csv" && ctx.format != "json") {
            throw ConfigError("format must be csv or json");
        }
        ctx.out_dir = resolve_out_dir(chosen->out_flag);
        std::filesystem::create_directories(ctx.out_dir);
        write_json(ctx, kSnapshotName,
                   {{"schema_version", kConfigSchemaVersion},
                    {"command", ctx.command},
                    {"settings", ctx.settings}});
        return chosen->command.run(ctx);
    } catch (const BudgetExceeded &e) {
        err << "error: " << e.what()
            << "\nhint: rerun with --mode mc --samples N\n";
        return kExitConfigError;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << " (byte offset " << e.offset()
            << ")\n";
        return kExitConfigError;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

} // namespace qnnlab::cli
