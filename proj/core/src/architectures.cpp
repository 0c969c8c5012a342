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

#include "qnnlab/architectures.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace qnnlab {

namespace {

// Appends RY gates on `qubits` as layer `layer`, positions 1..size.
void add_rotation_layer(CircuitSpec &spec, int layer,
                        const std::vector<int> &qubits) {
    int position = 1;
    for (int q : qubits) {
        spec.gates.push_back(GateOp::ry(q, spec.n_params));
        spec.slot_labels.push_back({layer, position++});
        ++spec.n_params;
    }
}

std::vector<int> all_qubits(int n) {
    std::vector<int> q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        q[static_cast<std::size_t>(i)] = i + 1;
    }
    return q;
}

// Binary-tree CNOT column at level `level`, dropping pairs whose control
// falls outside the register. Returns the targets in order.
std::vector<int> add_tree_cnots(CircuitSpec &spec, int level) {
    const int stride = 1 << level;
    const int half = stride / 2;
    std::vector<int> targets;
    for (int target = 1; target + half <= spec.n_qubits; target += stride) {
        spec.gates.push_back(GateOp::cnot(target + half, target));
        targets.push_back(target);
    }
    return targets;
}

} // namespace

std::string architecture_name(const ArchitectureKind &kind) {
    struct Visitor {
        std::string operator()(const TreeTensor &) const { return "tt"; }
        std::string operator()(const DeformedTreeTensor &) const {
            return "dtt";
        }
        std::string operator()(const StepControlled &) const { return "sc"; }
        std::string operator()(const RandomLayout &) const { return "random"; }
        std::string operator()(const AlternatingW &) const {
            return "alternating_w";
        }
        std::string operator()(const EncoderU &) const { return "encoder"; }
    };
    return std::visit(Visitor{}, kind);
}

CircuitSpec build_tt(int n) {
    if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n))) {
        throw std::invalid_argument("TT needs n a power of two >= 2, got " +
                                    std::to_string(n));
    }
    CircuitSpec spec = build_dtt(n);
    spec.architecture = "tt";
    return spec;
}

CircuitSpec build_dtt(int n) {
    if (n < 2) {
        throw std::invalid_argument("DTT needs n >= 2");
    }
    CircuitSpec spec;
    spec.n_qubits = n;
    spec.architecture = "dtt";
    add_rotation_layer(spec, 1, all_qubits(n));
    const int levels = std::bit_width(static_cast<unsigned>(n - 1));
    for (int level = 1; level <= levels; ++level) {
        add_rotation_layer(spec, level + 1, add_tree_cnots(spec, level));
    }
    spec.validate();
    return spec;
}

CircuitSpec build_sc(int n, int n_c) {
    if (n < 2) {
        throw std::invalid_argument("SC needs n >= 2");
    }
    if (n_c < 1 || n_c > n - 1) {
        throw std::invalid_argument("SC needs 1 <= n_c <= n-1, got n_c=" +
                                    std::to_string(n_c));
    }
    CircuitSpec spec;
    spec.n_qubits = n;
    spec.architecture = "sc";
    add_rotation_layer(spec, 1, all_qubits(n));
    for (int l = 1; l <= n - 1; ++l) {
        const int control = n + 1 - l;
        const bool into_first = l > n - 1 - n_c;
        spec.gates.push_back(GateOp::cnot(control, into_first ? 1 : n - l));
        // The next rotation follows the qubit that just received the CNOT.
        add_rotation_layer(spec, l + 1, {into_first ? 1 : n - l});
    }
    spec.validate();
    return spec;
}

CircuitSpec build_random(int n, int n_ry, int n_cnot, std::uint64_t seed) {
    if (n < 1 || n_ry < 1 || n_cnot < 0) {
        throw std::invalid_argument("random circuit needs n >= 1, n_ry >= 1");
    }
    if (n_cnot > 0 && n < 2) {
        throw std::invalid_argument("CNOT gates need at least two qubits");
    }
    std::mt19937_64 rng(seed);
    std::vector<bool> is_ry(static_cast<std::size_t>(n_ry + n_cnot), false);
    std::fill_n(is_ry.begin(), n_ry, true);
    std::shuffle(is_ry.begin(), is_ry.end(), rng);

    std::uniform_int_distribution<int> pick(1, n);
    std::uniform_int_distribution<int> pick_other(1, std::max(1, n - 1));
    CircuitSpec spec;
    spec.n_qubits = n;
    spec.architecture = "random";
    for (bool ry : is_ry) {
        if (ry) {
            const int slot = spec.n_params++;
            spec.gates.push_back(GateOp::ry(pick(rng), slot));
            spec.slot_labels.push_back({slot + 1, 1});
        } else {
            const int control = pick(rng);
            int target = pick_other(rng);
            if (target >= control) {
                ++target;
            }
            spec.gates.push_back(GateOp::cnot(control, target));
        }
    }
    spec.validate();
    return spec;
}

CircuitSpec build_alternating_w(int n, int L) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument(
            "alternating encoder needs even n >= 4, got " + std::to_string(n));
    }
    if (L < 1) {
        throw std::invalid_argument("alternating encoder needs L >= 1");
    }
    CircuitSpec spec;
    spec.n_qubits = n;
    spec.architecture = "alternating_w";
    const auto qubits = all_qubits(n);
    for (int j = 1; j <= L; ++j) {
        add_rotation_layer(spec, 2 * j - 1, qubits);
        for (int a = 2; a + 1 <= n - 1; a += 2) {
            spec.gates.push_back(GateOp::cz(a, a + 1));
        }
        spec.gates.push_back(GateOp::cz(n, 1));
        add_rotation_layer(spec, 2 * j, qubits);
        for (int a = 1; a + 1 <= n; a += 2) {
            spec.gates.push_back(GateOp::cz(a, a + 1));
        }
    }
    add_rotation_layer(spec, 2 * L + 1, qubits);
    spec.validate();
    return spec;
}

CircuitSpec build_encoder_u(const CircuitSpec &w_spec) {
    CircuitSpec spec = invert_circuit(w_spec);
    std::vector<GateOp> flips;
    for (int q = 1; q <= w_spec.n_qubits; ++q) {
        flips.push_back(GateOp::x(q));
    }
    spec.gates.insert(spec.gates.begin(), flips.begin(), flips.end());
    spec.architecture = "encoder";
    spec.validate();
    return spec;
}

CircuitSpec build_architecture(const ArchitectureKind &kind, int n) {
    struct Visitor {
        int n;
        CircuitSpec operator()(const TreeTensor &) const { return build_tt(n); }
        CircuitSpec operator()(const DeformedTreeTensor &) const {
            return build_dtt(n);
        }
        CircuitSpec operator()(const StepControlled &k) const {
            return build_sc(n, k.n_c);
        }
        CircuitSpec operator()(const RandomLayout &k) const {
            return build_random(n, k.n_ry, k.n_cnot, k.seed);
        }
        CircuitSpec operator()(const AlternatingW &k) const {
            return build_alternating_w(n, k.L);
        }
        CircuitSpec operator()(const EncoderU &k) const {
            return build_encoder_u(build_alternating_w(n, k.L));
        }
    };
    return std::visit(Visitor{n}, kind);
}

std::vector<int> first_channel_layers(const CircuitSpec &spec) {
    std::vector<int> layers;
    for (std::size_t s = 0; s < spec.slot_labels.size(); ++s) {
        const SlotLabel &label = spec.slot_labels[s];
        if (label.position == 1 &&
            spec.qubit_of_slot(static_cast<int>(s)) == 1) {
            layers.push_back(label.layer);
        }
    }
    std::sort(layers.begin(), layers.end());
    layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
    return layers;
}

} // namespace qnnlab
