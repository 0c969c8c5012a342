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
 * Entry point of the qnnlab command-line tool, callable in-process.
 */
#pragma once

#include <ostream>

namespace qnnlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Environment variable naming the default output directory.
inline constexpr const char *kOutDirEnv = "QNNLAB_OUT_DIR";

/// Version of the resolved-config snapshot layout.
inline constexpr int kConfigSchemaVersion = 1;

/// Parses argv, runs one subcommand and returns its exit code. Human-readable
/// output goes to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

} // namespace qnnlab::cli
