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
 * Circuit builders for the tree-tensor (TT), deformed tree-tensor (DTT),
 * step-controlled (SC), random baseline, and alternating-layer encoder
 * networks.
 *
 * Layer-structured builders emit V_1, CX_1, V_2, ..., CX_m, V_{m+1}, where
 * V_l is a column of RY rotations and CX_l a column of CNOTs. Slot labels
 * are (layer l, position k) with k counted top to bottom inside V_l.
 */
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qnnlab/circuit.hpp"

namespace qnnlab {

struct TreeTensor {};
struct DeformedTreeTensor {};
struct StepControlled {
    int n_c{1};
};
struct RandomLayout {
    int n_ry{1};
    int n_cnot{0};
    std::uint64_t seed{0};
};
struct AlternatingW {
    int L{1};
};
struct EncoderU {
    int L{1};
};

using ArchitectureKind = std::variant<TreeTensor, DeformedTreeTensor,
                                      StepControlled, RandomLayout,
                                      AlternatingW, EncoderU>;

/// Short tag such as "tt", "sc", "random".
[[nodiscard]] std::string architecture_name(const ArchitectureKind &kind);

/// n must be a power of two, n >= 2.
[[nodiscard]] CircuitSpec build_tt(int n);

/// Any n >= 2. Pairs qubits as in TT and lets unpaired qubits pass through
/// to the next level, so parameter count stays 2n-1.
[[nodiscard]] CircuitSpec build_dtt(int n);

/// 1 <= n_c <= n-1. The last n_c CNOTs target qubit 1.
[[nodiscard]] CircuitSpec build_sc(int n, int n_c);

/// Uniform random placement and interleaving; deterministic in `seed`.
[[nodiscard]] CircuitSpec build_random(int n, int n_ry, int n_cnot,
                                       std::uint64_t seed);

/// W(beta) with L blocks U_j = CZ_1 V_2j CZ_2 V_2j-1 and a final V_2L+1.
/// Requires even n >= 4.
[[nodiscard]] CircuitSpec build_alternating_w(int n, int L);

/// X on every qubit followed by the inverse of `w_spec`.
[[nodiscard]] CircuitSpec build_encoder_u(const CircuitSpec &w_spec);

[[nodiscard]] CircuitSpec build_architecture(const ArchitectureKind &kind,
                                             int n);

/// Layers j whose slot (j, 1) rotates qubit 1, in increasing order.
[[nodiscard]] std::vector<int> first_channel_layers(const CircuitSpec &spec);

} // namespace qnnlab
