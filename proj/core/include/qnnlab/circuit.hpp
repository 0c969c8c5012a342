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

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnlab/state_vector.hpp"

namespace qnnlab {

/// Reporting label theta_j^(k): layer j, position k inside the layer (1-based).
struct SlotLabel {
    int layer{0};
    int position{0};

    friend bool operator==(const SlotLabel &, const SlotLabel &) = default;
};

/**
 * Ordered gate list with parameter slots. Slots are 0..n_params-1 and every
 * slot is referenced by at least one RY gate.
 */
struct CircuitSpec {
    int n_qubits{0};
    std::vector<GateOp> gates;
    int n_params{0};
    std::string architecture;
    /// slot_labels[s] labels slot s; may be empty for ad-hoc circuits.
    std::vector<SlotLabel> slot_labels;

    /// Throws std::invalid_argument on any structural violation.
    void validate() const;

    /// Slot carrying label (layer, position); -1 if absent.
    [[nodiscard]] int slot_of(int layer, int position) const;

    /// Qubit rotated by the first RY gate bound to `slot`.
    [[nodiscard]] int qubit_of_slot(int slot) const;

    [[nodiscard]] std::size_t count(GateKind kind) const;

    friend bool operator==(const CircuitSpec &, const CircuitSpec &) = default;
};

/// Reversed gate order with every RY angle sign flipped.
[[nodiscard]] CircuitSpec invert_circuit(const CircuitSpec &spec);

/// Applies the gates in order. Throws std::out_of_range when the parameter
/// vector is too short.
[[nodiscard]] StateVector run_circuit(StateVector state, const CircuitSpec &spec,
                                      std::span<const double> params);

void run_circuit_in_place(StateVector &state, const CircuitSpec &spec,
                          std::span<const double> params);

void to_json(nlohmann::json &j, const GateOp &gate);
void from_json(const nlohmann::json &j, GateOp &gate);
void to_json(nlohmann::json &j, const CircuitSpec &spec);
void from_json(const nlohmann::json &j, CircuitSpec &spec);

} // namespace qnnlab
