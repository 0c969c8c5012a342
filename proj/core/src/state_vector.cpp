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

#include "qnnlab/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qnnlab {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr int kMaxQubits = 30;

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, 30], got " +
                                    std::to_string(n));
    }
}

} // namespace

StateVector StateVector::basis(int n_qubits, std::string_view bits) {
    check_qubit_count(n_qubits);
    if (bits.size() != static_cast<std::size_t>(n_qubits)) {
        throw std::invalid_argument("bitstring length " +
                                    std::to_string(bits.size()) +
                                    " does not match qubit count " +
                                    std::to_string(n_qubits));
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring must contain only 0/1");
        }
        index = (index << 1U) | static_cast<std::size_t>(c == '1');
    }
    std::vector<double> amps(std::size_t{1} << n_qubits, 0.0);
    amps[index] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::zeros(int n_qubits) {
    check_qubit_count(n_qubits);
    std::vector<double> amps(std::size_t{1} << n_qubits, 0.0);
    amps[0] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::vector<double> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument(
            "amplitude count must be a power of two >= 2");
    }
    const double norm2 = std::inner_product(
        amplitudes.begin(), amplitudes.end(), amplitudes.begin(), 0.0);
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not unit norm (|psi|^2 = " +
                                    std::to_string(norm2) + ")");
    }
    const int n = std::countr_zero(dim);
    check_qubit_count(n);
    return {n, std::move(amplitudes)};
}

StateVector StateVector::amplitude_encode(std::span<const double> x) {
    const double norm2 = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    if (!(norm2 > 0.0)) {
        throw std::invalid_argument("cannot amplitude-encode a zero vector");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<double> amps(x.begin(), x.end());
    for (double &a : amps) {
        a *= inv;
    }
    return from_amplitudes(std::move(amps));
}

StateVector StateVector::product(std::span<const double> angles) {
    const int n = static_cast<int>(angles.size());
    check_qubit_count(n);
    std::vector<double> amps(std::size_t{1} << n, 1.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        for (int q = 0; q < n; ++q) {
            const bool one = ((i >> static_cast<unsigned>(n - 1 - q)) & 1U) != 0;
            const double a = angles[static_cast<std::size_t>(q)];
            amps[i] *= one ? std::sin(a) : std::cos(a);
        }
    }
    return {n, std::move(amps)};
}

double StateVector::norm_squared() const noexcept {
    return std::inner_product(amps_.begin(), amps_.end(), amps_.begin(), 0.0);
}

std::size_t StateVector::qubit_mask(int qubit) const {
    if (qubit < 1 || qubit > n_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " outside 1.." + std::to_string(n_qubits_));
    }
    return std::size_t{1} << static_cast<unsigned>(n_qubits_ - qubit);
}

double overlap(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("overlap of states with different sizes");
    }
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    return std::abs(std::inner_product(x.begin(), x.end(), y.begin(), 0.0));
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RY:
        return "RY";
    case GateKind::X:
        return "X";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CZ:
        return "CZ";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    if (name == "RY") {
        return GateKind::RY;
    }
    if (name == "X") {
        return GateKind::X;
    }
    if (name == "CNOT") {
        return GateKind::CNOT;
    }
    if (name == "CZ") {
        return GateKind::CZ;
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(name) +
                                "'");
}

GateOp GateOp::ry(int qubit, int slot, int sign) {
    return GateOp{GateKind::RY, {qubit, 0}, slot, sign};
}

GateOp GateOp::x(int qubit) { return GateOp{GateKind::X, {qubit, 0}, {}, 1}; }

GateOp GateOp::cnot(int control, int target) {
    return GateOp{GateKind::CNOT, {control, target}, {}, 1};
}

GateOp GateOp::cz(int a, int b) {
    return GateOp{GateKind::CZ, {a, b}, {}, 1};
}

void GateOp::validate(int n_qubits) const {
    const auto in_range = [n_qubits](int q) { return q >= 1 && q <= n_qubits; };
    if (!in_range(qubits[0]) || (arity() == 2 && !in_range(qubits[1]))) {
        throw std::out_of_range(std::string(to_string(kind)) +
                                " qubit index outside 1.." +
                                std::to_string(n_qubits));
    }
    if (arity() == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument(std::string(to_string(kind)) +
                                    " needs two distinct qubits");
    }
    if ((kind == GateKind::RY) != param_slot.has_value()) {
        throw std::invalid_argument(
            "parameter slot must be present exactly for RY gates");
    }
    if (param_slot && *param_slot < 0) {
        throw std::invalid_argument("negative parameter slot");
    }
    if (angle_sign != 1 && angle_sign != -1) {
        throw std::invalid_argument("angle_sign must be +1 or -1");
    }
}

void apply_ry(StateVector &state, int qubit, double angle) {
    const std::size_t mask = state.qubit_mask(qubit);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto amps = state.mutable_amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const double a0 = amps[i];
            const double a1 = amps[i + mask];
            amps[i] = c * a0 - s * a1;
            amps[i + mask] = s * a0 + c * a1;
        }
    }
}

void apply_gate_in_place(StateVector &state, const GateOp &gate,
                         std::span<const double> params) {
    gate.validate(state.n_qubits());
    auto amps = state.mutable_amplitudes();
    const std::size_t dim = amps.size();

    switch (gate.kind) {
    case GateKind::RY: {
        const auto slot = static_cast<std::size_t>(*gate.param_slot);
        if (slot >= params.size()) {
            throw std::out_of_range("parameter slot " + std::to_string(slot) +
                                    " >= parameter count " +
                                    std::to_string(params.size()));
        }
        apply_ry(state, gate.qubits[0], gate.angle_sign * params[slot]);
        return;
    }
    case GateKind::X: {
        const std::size_t mask = state.qubit_mask(gate.qubits[0]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & mask) == 0) {
                std::swap(amps[i], amps[i | mask]);
            }
        }
        return;
    }
    case GateKind::CNOT: {
        const std::size_t control = state.qubit_mask(gate.qubits[0]);
        const std::size_t target = state.qubit_mask(gate.qubits[1]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & control) != 0 && (i & target) == 0) {
                std::swap(amps[i], amps[i | target]);
            }
        }
        return;
    }
    case GateKind::CZ: {
        const std::size_t both = state.qubit_mask(gate.qubits[0]) |
                                 state.qubit_mask(gate.qubits[1]);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & both) == both) {
                amps[i] = -amps[i];
            }
        }
        return;
    }
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate,
                       std::span<const double> params) {
    apply_gate_in_place(state, gate, params);
    return state;
}

PauliString::PauliString(std::vector<Pauli> labels)
    : labels_{std::move(labels)} {}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> labels;
    labels.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case 'I':
            labels.push_back(Pauli::I);
            break;
        case 'X':
            labels.push_back(Pauli::X);
            break;
        case 'Y':
            labels.push_back(Pauli::Y);
            break;
        case 'Z':
            labels.push_back(Pauli::Z);
            break;
        default:
            throw std::invalid_argument("invalid Pauli label '" +
                                        std::string(1, c) + "'");
        }
    }
    return PauliString{std::move(labels)};
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
    if (qubit < 1 || qubit > n_qubits) {
        throw std::out_of_range("Pauli qubit outside 1..n");
    }
    std::vector<Pauli> labels(static_cast<std::size_t>(n_qubits), Pauli::I);
    labels[static_cast<std::size_t>(qubit - 1)] = p;
    return PauliString{std::move(labels)};
}

PauliString PauliString::single_z(int n_qubits, int qubit) {
    return single(n_qubits, qubit, Pauli::Z);
}

bool PauliString::is_diagonal() const noexcept {
    for (Pauli p : labels_) {
        if (p == Pauli::X || p == Pauli::Y) {
            return false;
        }
    }
    return true;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(labels_.size());
    for (Pauli p : labels_) {
        out.push_back("IXYZ"[static_cast<int>(p)]);
    }
    return out;
}

double pauli_expectation(const StateVector &state, const PauliString &obs) {
    const int n = state.n_qubits();
    if (obs.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("Pauli string length " +
                                    std::to_string(obs.size()) +
                                    " does not match qubit count " +
                                    std::to_string(n));
    }
    std::size_t x_mask = 0;
    std::size_t z_mask = 0;
    int y_count = 0;
    for (int q = 1; q <= n; ++q) {
        const std::size_t bit = state.qubit_mask(q);
        switch (obs.labels()[static_cast<std::size_t>(q - 1)]) {
        case Pauli::I:
            break;
        case Pauli::X:
            x_mask |= bit;
            break;
        case Pauli::Z:
            z_mask |= bit;
            break;
        case Pauli::Y:
            x_mask |= bit;
            z_mask |= bit;
            ++y_count;
            break;
        }
    }
    // P = i^y_count * X(x_mask) Z(z_mask); for real psi odd powers of i
    // contribute nothing.
    if (y_count % 2 == 1) {
        return 0.0;
    }
    const auto amps = state.amplitudes();
    double sum = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double sign = (std::popcount(i & z_mask) % 2 == 0) ? 1.0 : -1.0;
        sum += amps[i ^ x_mask] * sign * amps[i];
    }
    return (y_count % 4 == 0) ? sum : -sum;
}

std::string index_to_bitstring(std::size_t index, int n_qubits) {
    std::string out(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> static_cast<unsigned>(n_qubits - 1 - q)) & 1U) {
            out[static_cast<std::size_t>(q)] = '1';
        }
    }
    return out;
}

std::vector<std::size_t> sample_indices(const StateVector &state,
                                        std::int64_t shots,
                                        std::mt19937_64 &rng) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const auto amps = state.amplitudes();
    std::vector<double> cumulative(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += amps[i] * amps[i];
        cumulative[i] = acc;
    }
    std::uniform_real_distribution<double> uniform(0.0, acc);
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = uniform(rng);
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            --it;
        }
        // Skip zero-probability entries that share a cumulative value.
        std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
        while (amps[idx] == 0.0 && idx + 1 < amps.size()) {
            ++idx;
        }
        out.push_back(idx);
    }
    return out;
}

ShotCounts sample_bitstrings(const StateVector &state, std::int64_t shots,
                             std::mt19937_64 &rng) {
    ShotCounts result;
    result.shots = shots;
    for (std::size_t idx : sample_indices(state, shots, rng)) {
        ++result.counts[index_to_bitstring(idx, state.n_qubits())];
    }
    return result;
}

double estimate_f_from_shots(const ShotCounts &counts, int qubit) {
    if (counts.shots <= 0) {
        throw std::invalid_argument("shot record is empty");
    }
    std::int64_t zeros = 0;
    for (const auto &[bits, count] : counts.counts) {
        if (qubit < 1 || static_cast<std::size_t>(qubit) > bits.size()) {
            throw std::out_of_range("qubit outside the recorded bitstrings");
        }
        if (bits[static_cast<std::size_t>(qubit - 1)] == '0') {
            zeros += count;
        }
    }
    return static_cast<double>(zeros) / static_cast<double>(counts.shots);
}

} // namespace qnnlab
