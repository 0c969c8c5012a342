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

#include "qnnlab/densekit.hpp"

#include <cmath>
#include <stdexcept>

namespace qnnlab::dense {

ComplexMatrix pauli(int index) {
    const Complex i{0.0, 1.0};
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (index) {
    case 0:
        m << 1.0, 0.0, 0.0, 1.0;
        break;
    case 1:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case 2:
        m << 0.0, -i, i, 0.0;
        break;
    case 3:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    default:
        throw std::out_of_range("Pauli index must be 0..3");
    }
    return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) =
                a(r, c) * b;
        }
    }
    return out;
}

ComplexMatrix projector(int b) {
    ComplexMatrix p = ComplexMatrix::Zero(2, 2);
    p(b, b) = 1.0;
    return p;
}

ComplexMatrix cnot_target_first() {
    return kron(pauli(0), projector(0)) + kron(pauli(1), projector(1));
}

ComplexMatrix cz() {
    return kron(pauli(0), projector(0)) + kron(pauli(3), projector(1));
}

ComplexMatrix rotation(int k, double theta) {
    const Complex i{0.0, 1.0};
    return std::cos(theta) * pauli(0) - i * std::sin(theta) * pauli(k);
}

ComplexMatrix rotation_derivative(int k, double theta) {
    const Complex i{0.0, 1.0};
    return -std::sin(theta) * pauli(0) - i * std::cos(theta) * pauli(k);
}

ComplexMatrix random_matrix(int dim, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            const double re = u(rng);
            const double im = u(rng);
            m(r, c) = Complex{re, im};
        }
    }
    return m;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qnnlab::dense
