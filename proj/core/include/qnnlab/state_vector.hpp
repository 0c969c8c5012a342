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
 * Real-amplitude statevector simulator.
 *
 * Conventions used throughout the library:
 *  - Qubits are numbered from 1. Qubit 1 is the leftmost tensor factor and
 *    maps to the most significant bit of the amplitude index.
 *  - RY(theta) is the full-angle rotation exp(-i theta sigma_y), i.e. the
 *    real matrix [[cos theta, -sin theta], [sin theta, cos theta]]. Most
 *    circuit libraries use the half angle; this one does not.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnnlab {

/// Pure n-qubit state with real amplitudes. Always unit norm.
class StateVector {
  public:
    /// |bits>, e.g. basis(2, "10") has amplitude 1 at index 2.
    static StateVector basis(int n_qubits, std::string_view bits);

    /// |0...0>.
    static StateVector zeros(int n_qubits);

    /// Takes ownership of amplitudes; length must be a power of two >= 2
    /// and the norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<double> amplitudes);

    /// Amplitude-encodes x / ||x||. Rejects the zero vector.
    static StateVector amplitude_encode(std::span<const double> x);

    /// Real product state, qubit q in cos(a_q)|0> + sin(a_q)|1>.
    static StateVector product(std::span<const double> angles);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const double> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] double operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] double norm_squared() const noexcept;

    /// Mutable view for gate kernels. Callers must preserve the norm.
    [[nodiscard]] std::span<double> mutable_amplitudes() noexcept {
        return amps_;
    }

    /// Bit mask of `qubit` (1-based) inside an amplitude index.
    [[nodiscard]] std::size_t qubit_mask(int qubit) const;

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    StateVector(int n_qubits, std::vector<double> amps)
        : n_qubits_{n_qubits}, amps_{std::move(amps)} {}

    int n_qubits_;
    std::vector<double> amps_;
};

/// |<a|b>| for real states of equal size.
[[nodiscard]] double overlap(const StateVector &a, const StateVector &b);

enum class GateKind : std::uint8_t { RY, X, CNOT, CZ };

[[nodiscard]] std::string_view to_string(GateKind kind);
[[nodiscard]] GateKind gate_kind_from_string(std::string_view name);

/**
 * One gate of a circuit. For CNOT, qubits = {control, target}. RY carries a
 * parameter slot; the applied angle is angle_sign * params[param_slot].
 */
struct GateOp {
    GateKind kind{GateKind::X};
    std::array<int, 2> qubits{0, 0};
    std::optional<int> param_slot;
    int angle_sign{1};

    static GateOp ry(int qubit, int slot, int sign = 1);
    static GateOp x(int qubit);
    static GateOp cnot(int control, int target);
    static GateOp cz(int a, int b);

    [[nodiscard]] int arity() const noexcept {
        return kind == GateKind::CNOT || kind == GateKind::CZ ? 2 : 1;
    }

    /// Throws std::out_of_range for qubit indices outside 1..n and
    /// std::invalid_argument for the other structural faults.
    void validate(int n_qubits) const;

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

void apply_gate_in_place(StateVector &state, const GateOp &gate,
                         std::span<const double> params);

[[nodiscard]] StateVector apply_gate(StateVector state, const GateOp &gate,
                                     std::span<const double> params);

/// Rotation primitive shared by the gate kernel and the benchmarks.
void apply_ry(StateVector &state, int qubit, double angle);

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Per-qubit Pauli labels; labels()[0] acts on qubit 1.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> labels);

    /// Parses strings like "ZIII" or "XZ".
    static PauliString parse(std::string_view text);

    /// Z on `qubit` (1-based), identity elsewhere.
    static PauliString single_z(int n_qubits, int qubit);
    static PauliString single(int n_qubits, int qubit, Pauli p);

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] std::span<const Pauli> labels() const noexcept {
        return labels_;
    }
    [[nodiscard]] bool is_diagonal() const noexcept;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::vector<Pauli> labels_;
};

/**
 * <psi|P|psi> for a real state. Uses Y = i X Z per qubit, so strings with an
 * odd number of Y factors give exactly 0 and even counts give a real value.
 */
[[nodiscard]] double pauli_expectation(const StateVector &state,
                                       const PauliString &obs);

/// Measurement record; keys are n-character bitstrings, qubit 1 first.
struct ShotCounts {
    std::map<std::string, std::int64_t> counts;
    std::int64_t shots{0};
};

/// Draws basis-state indices i.i.d. from the Born distribution.
[[nodiscard]] std::vector<std::size_t>
sample_indices(const StateVector &state, std::int64_t shots,
               std::mt19937_64 &rng);

[[nodiscard]] ShotCounts sample_bitstrings(const StateVector &state,
                                           std::int64_t shots,
                                           std::mt19937_64 &rng);

/// Fraction of shots in which `qubit` (1-based) reads 0.
[[nodiscard]] double estimate_f_from_shots(const ShotCounts &counts,
                                           int qubit);

[[nodiscard]] std::string index_to_bitstring(std::size_t index, int n_qubits);

} // namespace qnnlab
