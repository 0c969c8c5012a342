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

#pragma once

#include <cstdio>
#include <initializer_list>
#include <string>

namespace qnnlab {

/// Round-trippable decimal form ("%.17g").
[[nodiscard]] inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[nodiscard]] inline std::string
csv_join(std::initializer_list<std::string> fields) {
    std::string out;
    bool first = true;
    for (const std::string &f : fields) {
        if (!first) {
            out += ',';
        }
        out += f;
        first = false;
    }
    return out;
}

} // namespace qnnlab
