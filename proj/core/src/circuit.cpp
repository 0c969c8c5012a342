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

#include "qnnlab/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnnlab {

void CircuitSpec::validate() const {
    if (n_qubits < 1) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
    if (n_params < 0) {
        throw std::invalid_argument("negative parameter count");
    }
    std::vector<bool> used(static_cast<std::size_t>(n_params), false);
    for (const GateOp &g : gates) {
        g.validate(n_qubits);
        if (g.param_slot) {
            if (*g.param_slot >= n_params) {
                throw std::invalid_argument(
                    "parameter slot " + std::to_string(*g.param_slot) +
                    " >= n_params " + std::to_string(n_params));
            }
            used[static_cast<std::size_t>(*g.param_slot)] = true;
        }
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw std::invalid_argument("parameter slots are not contiguous");
    }
    if (!slot_labels.empty() &&
        slot_labels.size() != static_cast<std::size_t>(n_params)) {
        throw std::invalid_argument("slot label count does not match n_params");
    }
}

int CircuitSpec::slot_of(int layer, int position) const {
    const SlotLabel want{layer, position};
    const auto it = std::find(slot_labels.begin(), slot_labels.end(), want);
    return it == slot_labels.end()
               ? -1
               : static_cast<int>(it - slot_labels.begin());
}

int CircuitSpec::qubit_of_slot(int slot) const {
    for (const GateOp &g : gates) {
        if (g.param_slot && *g.param_slot == slot) {
            return g.qubits[0];
        }
    }
    throw std::out_of_range("slot " + std::to_string(slot) + " is unused");
}

std::size_t CircuitSpec::count(GateKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [kind](const GateOp &g) { return g.kind == kind; }));
}

CircuitSpec invert_circuit(const CircuitSpec &spec) {
    CircuitSpec out = spec;
    std::reverse(out.gates.begin(), out.gates.end());
    for (GateOp &g : out.gates) {
        if (g.kind == GateKind::RY) {
            g.angle_sign = -g.angle_sign;
        }
    }
    return out;
}

void run_circuit_in_place(StateVector &state, const CircuitSpec &spec,
                          std::span<const double> params) {
    if (state.n_qubits() != spec.n_qubits) {
        throw std::invalid_argument("state has " +
                                    std::to_string(state.n_qubits()) +
                                    " qubits, circuit expects " +
                                    std::to_string(spec.n_qubits));
    }
    if (params.size() < static_cast<std::size_t>(spec.n_params)) {
        throw std::out_of_range("circuit needs " +
                                std::to_string(spec.n_params) +
                                " parameters, got " +
                                std::to_string(params.size()));
    }
    for (const GateOp &g : spec.gates) {
        apply_gate_in_place(state, g, params);
    }
}

StateVector run_circuit(StateVector state, const CircuitSpec &spec,
                        std::span<const double> params) {
    run_circuit_in_place(state, spec, params);
    return state;
}

void to_json(nlohmann::json &j, const GateOp &gate) {
    j = nlohmann::json{{"kind", std::string(to_string(gate.kind))}};
    if (gate.arity() == 2) {
        j["qubits"] = {gate.qubits[0], gate.qubits[1]};
    } else {
        j["qubits"] = {gate.qubits[0]};
    }
    if (gate.param_slot) {
        j["slot"] = *gate.param_slot;
        j["sign"] = gate.angle_sign;
    }
}

void from_json(const nlohmann::json &j, GateOp &gate) {
    gate = GateOp{};
    gate.kind = gate_kind_from_string(j.at("kind").get<std::string>());
    const auto &q = j.at("qubits");
    if (q.size() != static_cast<std::size_t>(gate.arity())) {
        throw std::invalid_argument("wrong number of qubits for " +
                                    std::string(to_string(gate.kind)));
    }
    gate.qubits[0] = q.at(0).get<int>();
    if (gate.arity() == 2) {
        gate.qubits[1] = q.at(1).get<int>();
    }
    if (j.contains("slot")) {
        gate.param_slot = j.at("slot").get<int>();
        gate.angle_sign = j.value("sign", 1);
    }
}

void to_json(nlohmann::json &j, const CircuitSpec &spec) {
    nlohmann::json labels = nlohmann::json::array();
    for (const SlotLabel &l : spec.slot_labels) {
        labels.push_back({l.layer, l.position});
    }
    j = nlohmann::json{{"architecture", spec.architecture},
                       {"n_qubits", spec.n_qubits},
                       {"n_params", spec.n_params},
                       {"gates", spec.gates},
                       {"slot_labels", labels}};
}

void from_json(const nlohmann::json &j, CircuitSpec &spec) {
    spec = CircuitSpec{};
    spec.architecture = j.value("architecture", std::string{});
    spec.n_qubits = j.at("n_qubits").get<int>();
    spec.n_params = j.at("n_params").get<int>();
    spec.gates = j.at("gates").get<std::vector<GateOp>>();
    if (j.contains("slot_labels")) {
        for (const auto &l : j.at("slot_labels")) {
            spec.slot_labels.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
        }
    }
    spec.validate();
}

} // namespace qnnlab
