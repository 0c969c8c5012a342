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
 * Small dense complex matrices (2x2 and 4x4) for the Pauli-algebra checks.
 * Separate from the real statevector path on purpose.
 *
 * Two-qubit operators are written A (x) B with A on the first factor. The
 * CNOT here is sigma_0 (x) |0><0| + sigma_1 (x) |1><1|: the first factor is
 * the target and the second the control.
 */
#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace qnnlab::dense {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// sigma_0..sigma_3 = I, X, Y, Z.
[[nodiscard]] ComplexMatrix pauli(int index);

[[nodiscard]] ComplexMatrix kron(const ComplexMatrix &a,
                                 const ComplexMatrix &b);

/// |b><b| for b in {0, 1}.
[[nodiscard]] ComplexMatrix projector(int b);

[[nodiscard]] ComplexMatrix cnot_target_first();
[[nodiscard]] ComplexMatrix cz();

/// exp(-i theta sigma_k) = cos(theta) I - i sin(theta) sigma_k.
[[nodiscard]] ComplexMatrix rotation(int k, double theta);

/// d/dtheta of rotation(k, theta).
[[nodiscard]] ComplexMatrix rotation_derivative(int k, double theta);

/// Entries with real and imaginary parts uniform in [-1, 1].
[[nodiscard]] ComplexMatrix random_matrix(int dim, std::mt19937_64 &rng);

/// Largest absolute entrywise difference.
[[nodiscard]] double max_abs_diff(const ComplexMatrix &a,
                                  const ComplexMatrix &b);

} // namespace qnnlab::dense
