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

// Internal plumbing shared by the subcommand implementations.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace CLI {
class App;
class Option;
} // namespace CLI

namespace qnnlab::cli {

/// Bad user input: unknown keys, wrong types, invalid combinations.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Binds command-line options to keys of a JSON settings object. Each option
 * declares its default once; options given on the command line overwrite
 * the value loaded from a config file.
 */
class Flags {
  public:
    explicit Flags(CLI::App *app) : app_(app) {}

    void add_int(const std::string &name, const std::string &key,
                 nlohmann::json fallback, const std::string &help);
    void add_uint(const std::string &name, const std::string &key,
                  nlohmann::json fallback, const std::string &help);
    void add_double(const std::string &name, const std::string &key,
                    nlohmann::json fallback, const std::string &help);
    void add_string(const std::string &name, const std::string &key,
                    nlohmann::json fallback, const std::string &help,
                    std::vector<std::string> choices = {});
    /// Comma-separated list.
    void add_doubles(const std::string &name, const std::string &key,
                     nlohmann::json fallback, const std::string &help);
    void add_ints(const std::string &name, const std::string &key,
                  nlohmann::json fallback, const std::string &help);
    void add_switch(const std::string &name, const std::string &key,
                    const std::string &help);

    [[nodiscard]] const nlohmann::json &defaults() const { return defaults_; }
    /// Writes every option that was given on the command line into `settings`.
    void overlay(nlohmann::json &settings) const;

  private:
    struct Binding {
        CLI::Option *option;
        std::string key;
        std::function<nlohmann::json()> value;
    };

    template <class T>
    void bind(const std::string &name, const std::string &key,
              nlohmann::json fallback, const std::string &help,
              const std::function<void(CLI::Option *)> &tweak);

    CLI::App *app_;
    nlohmann::json defaults_ = nlohmann::json::object();
    std::vector<Binding> bindings_;
    std::vector<std::shared_ptr<void>> storage_;
};

struct Context {
    std::string command;
    nlohmann::json settings;
    std::filesystem::path out_dir;
    /// "csv" or "json".
    std::string format;
    /// Print a machine-readable summary on stdout instead of a table.
    bool json_stdout{false};
    std::ostream &out;
    std::ostream &err;

    template <class T> [[nodiscard]] T get(const std::string &key) const {
        try {
            return settings.at(key).get<T>();
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError("setting '" + key + "': " + e.what());
        }
    }
    [[nodiscard]] bool has(const std::string &key) const {
        return settings.contains(key) && !settings.at(key).is_null();
    }
    [[nodiscard]] std::uint64_t seed() const {
        return get<std::uint64_t>("seed");
    }
};

struct Command {
    std::string name;
    std::string description;
    std::function<void(Flags &)> declare;
    std::function<int(const Context &)> run;
};

[[nodiscard]] Command lemma_check_command();
[[nodiscard]] Command verify_bounds_command();
[[nodiscard]] Command barren_plateau_command();
[[nodiscard]] Command train_encoder_command();
[[nodiscard]] Command classify_command();

/// Writes `content` to out_dir / name, replacing any previous file.
void write_output(const Context &ctx, const std::string &name,
                  const std::string &content);
/// Pretty JSON with a trailing newline.
void write_json(const Context &ctx, const std::string &name,
                const nlohmann::json &value);

/// Rows of CSV joined with newlines, header first.
[[nodiscard]] std::string csv_document(const std::string &header,
                                       const std::vector<std::string> &rows);

[[nodiscard]] std::string bool_field(bool b);

} // namespace qnnlab::cli
