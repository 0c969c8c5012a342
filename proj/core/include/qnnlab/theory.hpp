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
 * Numerical verifiers for the gradient-norm bounds of the TT, SC and DTT
 * networks, the encoder alpha bound, and the Pauli-algebra identities used
 * in their proofs.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnlab/architectures.hpp"
#include "qnnlab/densekit.hpp"
#include "qnnlab/expectation.hpp"
#include "qnnlab/gradients.hpp"

namespace qnnlab {

/// <X_1>^2 + <Z_1>^2.
[[nodiscard]] double alpha(const StateVector &state);

/// How an expectation over uniform parameters is evaluated.
struct VerifyMode {
    ExpectationMode mode{ExpectationMode::ExactGrid};
    std::int64_t samples{500};
    std::uint64_t seed{0};
    std::int64_t budget{kDefaultGridBudget};

    static VerifyMode exact(std::int64_t budget = kDefaultGridBudget) {
        return {ExpectationMode::ExactGrid, 0, 0, budget};
    }
    static VerifyMode monte_carlo(std::int64_t samples, std::uint64_t seed) {
        return {ExpectationMode::MonteCarlo, samples, seed, kDefaultGridBudget};
    }
};

inline constexpr double kSigmaSlack = 3.0;

struct BoundReport {
    std::string arch;
    int n{0};
    std::optional<int> n_c;
    std::optional<int> L;
    double lower_bound{0.0};
    ExpectationReport estimate;
    double upper_bound{0.0};
    double alpha{0.0};
    bool satisfied{false};
};

/// lower - 3 sigma <= mean <= upper + 3 sigma (sigma = 0 in exact mode).
[[nodiscard]] bool bound_satisfied(double lower, const ExpectationReport &est,
                                   double upper);

/// Lower bound on E||grad f||^2 for TT, SC or DTT, given alpha.
[[nodiscard]] double gradient_norm_lower_bound(const ArchitectureKind &kind,
                                               int n, double alpha_value);

/// Lower bound on E(f - 1/2)^2 for TT, SC or DTT, given alpha.
[[nodiscard]] double variance_lower_bound(const ArchitectureKind &kind, int n,
                                          double alpha_value);

/// Circuit and Z_1 readout used by the bound verifiers.
[[nodiscard]] Objective bound_objective(const ArchitectureKind &kind, int n,
                                        const StateVector &rho_in);

/// E_theta ||grad f||^2 against its lower and upper (2n - 1) bounds.
/// Throws BudgetExceeded when exact mode would exceed mode.budget.
[[nodiscard]] BoundReport
verify_gradient_norm_bound(const ArchitectureKind &kind, int n,
                           const StateVector &rho_in, const VerifyMode &mode);

struct DerivativeEqualityReport {
    std::string arch;
    int n{0};
    int layer{0};
    int slot{0};
    /// E (df/dtheta_layer^(1))^2.
    ExpectationReport derivative_sq;
    /// E (f - 1/2)^2.
    ExpectationReport variance;
    /// E[(df)^2 - 4 (f - 1/2)^2], with its own standard error.
    ExpectationReport residual;
    double variance_lower_bound{0.0};
    double alpha{0.0};
    bool equality_holds{false};
    bool variance_bound_holds{false};
};

inline constexpr double kExactEqualityTolerance = 1e-10;

/// Checks E(df/dtheta_j^(1))^2 == 4 E(f - 1/2)^2 for a first-channel layer.
/// Rejects layers whose first slot does not act on qubit 1.
[[nodiscard]] DerivativeEqualityReport
verify_derivative_equality(const ArchitectureKind &kind, int n, int layer,
                           const StateVector &rho_in, const VerifyMode &mode);

/// E_beta alpha(U(beta)|0...0>) >= 2^(-2L) for the alternating encoder.
[[nodiscard]] BoundReport verify_encoder_alpha_bound(int n, int L,
                                                     const VerifyMode &mode);

struct ConjugationCase {
    int j{0};
    int k{0};
    double max_error{0.0};
    bool pass{false};
};

struct ConjugationReport {
    std::string gate;
    std::vector<ConjugationCase> cases;
    [[nodiscard]] bool all_pass() const;
};

inline constexpr double kConjugationTolerance = 1e-12;
inline constexpr double kIntegrationTolerance = 1e-10;

/// Closed-form right-hand sides of the conjugation identities.
[[nodiscard]] dense::ComplexMatrix cnot_conjugation_formula(int j, int k);
[[nodiscard]] dense::ComplexMatrix cz_conjugation_formula(int j, int k);

/// All 16 (j, k) cases of CNOT (s_j (x) s_k) CNOT^dagger.
[[nodiscard]] ConjugationReport check_cnot_conjugation();
/// All 16 (j, k) cases of CZ (s_j (x) s_k) CZ^dagger.
[[nodiscard]] ConjugationReport check_cz_conjugation();

struct IntegrationCase {
    int j{0};
    int k{0};
    int pair{0};
    /// |quadrature - formula| for E Tr[W A W^+ s_j] Tr[W C W^+ s_j].
    double rotation_residual{0.0};
    /// Same with the leading W replaced by dW/dtheta.
    double derivative_residual{0.0};
    bool pass{false};
};

/// Both single-angle integration identities for one (j, k, A, C).
/// j in 0..3, k in 1..3, A and C 2x2.
[[nodiscard]] IntegrationCase
check_integration_identities(int j, int k, const dense::ComplexMatrix &A,
                             const dense::ComplexMatrix &C);

struct IntegrationSuiteReport {
    std::uint64_t seed{0};
    std::vector<IntegrationCase> cases;
    [[nodiscard]] bool all_pass() const;
};

/// `pairs` random (A, C) pairs times the 12 (j, k) combinations.
[[nodiscard]] IntegrationSuiteReport
check_integration_suite(int pairs, std::uint64_t seed);

struct ContrastRow {
    std::string arch;
    int n{0};
    int n_params{0};
    int n_cnot{0};
    ExpectationReport estimate;
    /// Bound for structured rows; 0 for random rows.
    double lower_bound{0.0};
    bool above_lower_bound{true};
};

/// Monte Carlo E||grad f||^2 (Z_1 readout, |0...0> input) for TT (or DTT
/// when n is not a power of two) and for random circuits with
/// round(depth_factor * n^2) RY and as many CNOT gates. Every random sample
/// draws a fresh circuit and fresh angles.
[[nodiscard]] std::vector<ContrastRow>
barren_plateau_contrast(std::span<const int> n_list, double depth_factor,
                        std::int64_t samples, std::uint64_t seed);

/// True when random-circuit means strictly decrease along the row order.
[[nodiscard]] bool random_means_strictly_decrease(
    std::span<const ContrastRow> rows);

void to_json(nlohmann::json &j, const ExpectationReport &r);
void to_json(nlohmann::json &j, const BoundReport &r);
void to_json(nlohmann::json &j, const DerivativeEqualityReport &r);
void to_json(nlohmann::json &j, const ConjugationCase &c);
void to_json(nlohmann::json &j, const IntegrationCase &c);
void to_json(nlohmann::json &j, const ContrastRow &r);

[[nodiscard]] std::string bound_csv_header();
[[nodiscard]] std::string to_csv_row(const BoundReport &r);

} // namespace qnnlab
