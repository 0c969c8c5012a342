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

#include "qnnlab/theory.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qnnlab/csv.hpp"
#include "qnnlab/seeding.hpp"

namespace qnnlab {

namespace {

// Per-parameter trigonometric degree of products of two objectives.
constexpr int kSquaredDegree = 4;

bool is_bounded_architecture(const ArchitectureKind &kind) {
    return std::holds_alternative<TreeTensor>(kind) ||
           std::holds_alternative<StepControlled>(kind) ||
           std::holds_alternative<DeformedTreeTensor>(kind);
}

void require_bounded_architecture(const ArchitectureKind &kind) {
    if (!is_bounded_architecture(kind)) {
        throw std::invalid_argument(
            "gradient bounds are defined for tt, sc and dtt only, got " +
            architecture_name(kind));
    }
}

std::vector<ExpectationReport> expectations(const VectorFn &fn, int n_params,
                                            int n_outputs,
                                            const VerifyMode &mode) {
    if (mode.mode == ExpectationMode::ExactGrid) {
        return exact_param_expectations(fn, n_params, n_outputs,
                                        kSquaredDegree, mode.budget);
    }
    return mc_param_expectations(fn, n_params, n_outputs, mode.samples,
                                 mode.seed);
}

ExpectationReport expectation(const ScalarFn &fn, int n_params,
                              const VerifyMode &mode) {
    return expectations(
        [&fn](std::span<const double> theta, std::span<double> out) {
            out[0] = fn(theta);
        },
        n_params, 1, mode)[0];
}

std::optional<int> n_c_of(const ArchitectureKind &kind) {
    if (const auto *sc = std::get_if<StepControlled>(&kind)) {
        return sc->n_c;
    }
    return std::nullopt;
}

bool delta(int j, int a, int b) { return j == a || j == b; }

using dense::ComplexMatrix;
using dense::kron;
using dense::pauli;

ComplexMatrix zero4() { return ComplexMatrix::Zero(4, 4); }

dense::Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a * b).trace();
}

} // namespace

double alpha(const StateVector &state) {
    const int n = state.n_qubits();
    const double x = pauli_expectation(state, PauliString::single(n, 1, Pauli::X));
    const double z = pauli_expectation(state, PauliString::single_z(n, 1));
    return x * x + z * z;
}

bool bound_satisfied(double lower, const ExpectationReport &est,
                     double upper) {
    const double slack = kSigmaSlack * est.std_error;
    return lower - slack <= est.mean && est.mean <= upper + slack;
}

double gradient_norm_lower_bound(const ArchitectureKind &kind, int n,
                                 double alpha_value) {
    require_bounded_architecture(kind);
    const double nd = static_cast<double>(n);
    if (const auto n_c = n_c_of(kind)) {
        return (1.0 + *n_c) / std::ldexp(1.0, 1 + *n_c) * alpha_value;
    }
    const double depth = 1.0 + std::log2(nd);
    const double denom = std::holds_alternative<TreeTensor>(kind) ? 2.0 : 4.0;
    return depth / (denom * nd) * alpha_value;
}

double variance_lower_bound(const ArchitectureKind &kind, int n,
                            double alpha_value) {
    require_bounded_architecture(kind);
    const double nd = static_cast<double>(n);
    if (const auto n_c = n_c_of(kind)) {
        return alpha_value / std::ldexp(1.0, 3 + *n_c);
    }
    const double denom = std::holds_alternative<TreeTensor>(kind) ? 8.0 : 16.0;
    return alpha_value / (denom * nd);
}

Objective bound_objective(const ArchitectureKind &kind, int n,
                          const StateVector &rho_in) {
    require_bounded_architecture(kind);
    if (rho_in.n_qubits() != n) {
        throw std::invalid_argument("input state has the wrong qubit count");
    }
    return Objective{build_architecture(kind, n), Observable::z1(n), rho_in};
}

BoundReport verify_gradient_norm_bound(const ArchitectureKind &kind, int n,
                                       const StateVector &rho_in,
                                       const VerifyMode &mode) {
    const Objective obj = bound_objective(kind, n, rho_in);
    const int n_params = obj.circuit.n_params;
    BoundReport report;
    report.arch = architecture_name(kind);
    report.n = n;
    report.n_c = n_c_of(kind);
    report.alpha = alpha(rho_in);
    report.lower_bound = gradient_norm_lower_bound(kind, n, report.alpha);
    report.upper_bound = 2.0 * n - 1.0;
    report.estimate = expectation(
        [&obj](std::span<const double> theta) {
            return parameter_shift_grad(obj, theta).norm_squared();
        },
        n_params, mode);
    report.satisfied =
        bound_satisfied(report.lower_bound, report.estimate, report.upper_bound);
    return report;
}

DerivativeEqualityReport
verify_derivative_equality(const ArchitectureKind &kind, int n, int layer,
                           const StateVector &rho_in, const VerifyMode &mode) {
    const Objective obj = bound_objective(kind, n, rho_in);
    const int slot = obj.circuit.slot_of(layer, 1);
    if (slot < 0 || obj.circuit.qubit_of_slot(slot) != 1) {
        throw std::invalid_argument("layer " + std::to_string(layer) +
                                    " has no rotation on qubit 1");
    }
    DerivativeEqualityReport report;
    report.arch = architecture_name(kind);
    report.n = n;
    report.layer = layer;
    report.slot = slot;
    report.alpha = alpha(rho_in);
    report.variance_lower_bound = variance_lower_bound(kind, n, report.alpha);

    const auto reports = expectations(
        [&obj, slot](std::span<const double> theta, std::span<double> out) {
            const double d = parameter_shift_partial(
                obj.circuit, obj.observable, obj.input, theta, slot);
            const double centered = objective_value(obj, theta) - 0.5;
            out[0] = d * d;
            out[1] = centered * centered;
            out[2] = d * d - 4.0 * centered * centered;
        },
        obj.circuit.n_params, 3, mode);
    report.derivative_sq = reports[0];
    report.variance = reports[1];
    report.residual = reports[2];

    const double tol =
        mode.mode == ExpectationMode::ExactGrid
            ? kExactEqualityTolerance
            : std::max(kExactEqualityTolerance,
                       kSigmaSlack * report.residual.std_error);
    report.equality_holds = std::abs(report.residual.mean) <= tol;
    report.variance_bound_holds =
        report.variance.mean >= report.variance_lower_bound -
                                    kSigmaSlack * report.variance.std_error;
    return report;
}

BoundReport verify_encoder_alpha_bound(int n, int L, const VerifyMode &mode) {
    const CircuitSpec u = build_encoder_u(build_alternating_w(n, L));
    const StateVector zero = StateVector::zeros(n);
    BoundReport report;
    report.arch = "encoder";
    report.n = n;
    report.L = L;
    report.lower_bound = std::ldexp(1.0, -2 * L);
    report.upper_bound = 1.0;
    report.estimate = expectation(
        [&u, &zero](std::span<const double> beta) {
            return alpha(run_circuit(zero, u, beta));
        },
        u.n_params, mode);
    report.alpha = report.estimate.mean;
    report.satisfied =
        bound_satisfied(report.lower_bound, report.estimate, report.upper_bound);
    return report;
}

bool ConjugationReport::all_pass() const {
    for (const ConjugationCase &c : cases) {
        if (!c.pass) {
            return false;
        }
    }
    return !cases.empty();
}

ComplexMatrix cnot_conjugation_formula(int j, int k) {
    const ComplexMatrix sj = pauli(j);
    const ComplexMatrix sk = pauli(k);
    ComplexMatrix out = zero4();
    if (delta(j, 0, 1) && delta(k, 0, 3)) {
        out += kron(sj, sk);
    }
    if (delta(j, 0, 1) && delta(k, 1, 2)) {
        out += kron(sj * pauli(1), sk);
    }
    if (delta(j, 2, 3) && delta(k, 0, 3)) {
        out += kron(sj, sk * pauli(3));
    }
    if (delta(j, 2, 3) && delta(k, 1, 2)) {
        out -= kron(sj * pauli(1), sk * pauli(3));
    }
    return out;
}

ComplexMatrix cz_conjugation_formula(int j, int k) {
    const ComplexMatrix sj = pauli(j);
    const ComplexMatrix sk = pauli(k);
    ComplexMatrix out = zero4();
    if (delta(j, 0, 3) && delta(k, 0, 3)) {
        out += kron(sj, sk);
    }
    if (delta(j, 0, 3) && delta(k, 1, 2)) {
        out += kron(sj * pauli(3), sk);
    }
    if (delta(j, 1, 2) && delta(k, 0, 3)) {
        out += kron(sj, sk * pauli(3));
    }
    if (delta(j, 1, 2) && delta(k, 1, 2)) {
        out -= kron(sj * pauli(3), sk * pauli(3));
    }
    return out;
}

namespace {

ConjugationReport check_conjugation(const std::string &name,
                                    const ComplexMatrix &gate,
                                    ComplexMatrix (*formula)(int, int)) {
    ConjugationReport report;
    report.gate = name;
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            const ComplexMatrix lhs =
                gate * kron(pauli(j), pauli(k)) * gate.adjoint();
            ConjugationCase c{j, k, dense::max_abs_diff(lhs, formula(j, k)),
                              false};
            c.pass = c.max_error <= kConjugationTolerance;
            report.cases.push_back(c);
        }
    }
    return report;
}

} // namespace

ConjugationReport check_cnot_conjugation() {
    return check_conjugation("CNOT", dense::cnot_target_first(),
                             &cnot_conjugation_formula);
}

ConjugationReport check_cz_conjugation() {
    return check_conjugation("CZ", dense::cz(), &cz_conjugation_formula);
}

IntegrationCase check_integration_identities(int j, int k,
                                             const ComplexMatrix &A,
                                             const ComplexMatrix &C) {
    if (j < 0 || j > 3 || k < 1 || k > 3) {
        throw std::invalid_argument("need j in 0..3 and k in 1..3");
    }
    if (A.rows() != 2 || A.cols() != 2 || C.rows() != 2 || C.cols() != 2) {
        throw std::invalid_argument("A and C must be 2x2");
    }
    const ComplexMatrix sj = pauli(j);
    const ComplexMatrix sk = pauli(k);

    // Real and imaginary parts of both integrands, one grid pass.
    const auto reports = exact_param_expectations(
        [&](std::span<const double> theta, std::span<double> out) {
            const ComplexMatrix w = dense::rotation(k, theta[0]);
            const ComplexMatrix g = dense::rotation_derivative(k, theta[0]);
            const ComplexMatrix wd = w.adjoint();
            const dense::Complex rot = trace_product(w * A * wd, sj) *
                                       trace_product(w * C * wd, sj);
            const dense::Complex der = trace_product(g * A * wd, sj) *
                                       trace_product(g * C * wd, sj);
            out[0] = rot.real();
            out[1] = rot.imag();
            out[2] = der.real();
            out[3] = der.imag();
        },
        1, 4, kSquaredDegree);
    const dense::Complex rot_lhs{reports[0].mean, reports[1].mean};
    const dense::Complex der_lhs{reports[2].mean, reports[3].mean};

    const double d = (j == 0 ? 1.0 : 0.0) + (j == k ? 1.0 : 0.0);
    const dense::Complex t1 = trace_product(A, sj) * trace_product(C, sj);
    const dense::Complex t2 =
        trace_product(A, sj * sk) * trace_product(C, sj * sk);
    const dense::Complex rot_rhs = (0.5 + d / 2.0) * t1 + (-0.5 + d / 2.0) * t2;
    const dense::Complex der_rhs = (0.5 - d / 2.0) * t1 + (-0.5 - d / 2.0) * t2;

    IntegrationCase c;
    c.j = j;
    c.k = k;
    c.rotation_residual = std::abs(rot_lhs - rot_rhs);
    c.derivative_residual = std::abs(der_lhs - der_rhs);
    c.pass = c.rotation_residual <= kIntegrationTolerance &&
             c.derivative_residual <= kIntegrationTolerance;
    return c;
}

bool IntegrationSuiteReport::all_pass() const {
    for (const IntegrationCase &c : cases) {
        if (!c.pass) {
            return false;
        }
    }
    return !cases.empty();
}

IntegrationSuiteReport check_integration_suite(int pairs, std::uint64_t seed) {
    IntegrationSuiteReport report;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    for (int p = 0; p < pairs; ++p) {
        const ComplexMatrix A = dense::random_matrix(2, rng);
        const ComplexMatrix C = dense::random_matrix(2, rng);
        for (int j = 0; j < 4; ++j) {
            for (int k = 1; k <= 3; ++k) {
                IntegrationCase c = check_integration_identities(j, k, A, C);
                c.pair = p;
                report.cases.push_back(c);
            }
        }
    }
    return report;
}

std::vector<ContrastRow> barren_plateau_contrast(std::span<const int> n_list,
                                                 double depth_factor,
                                                 std::int64_t samples,
                                                 std::uint64_t seed) {
    if (samples < 2) {
        throw std::invalid_argument("contrast needs at least 2 samples");
    }
    std::vector<ContrastRow> rows;
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        const std::uint64_t n_seed = derive_seed(seed, idx);

        ArchitectureKind structured = TreeTensor{};
        if (!std::has_single_bit(static_cast<unsigned>(n))) {
            structured = DeformedTreeTensor{};
        }
        const StateVector zero = StateVector::zeros(n);
        const BoundReport bound = verify_gradient_norm_bound(
            structured, n, zero,
            VerifyMode::monte_carlo(samples, derive_seed(n_seed, 0)));
        ContrastRow srow;
        srow.arch = bound.arch;
        srow.n = n;
        srow.n_params = 2 * n - 1;
        srow.n_cnot = n - 1;
        srow.estimate = bound.estimate;
        srow.lower_bound = bound.lower_bound;
        srow.above_lower_bound = bound.satisfied;
        rows.push_back(srow);

        const int gates = std::max(
            1, static_cast<int>(std::lround(depth_factor * n * n)));
        std::mt19937_64 rng(derive_seed(n_seed, 1));
        std::uniform_real_distribution<double> angle(0.0,
                                                     2.0 * std::numbers::pi);
        double mean = 0.0;
        double m2 = 0.0;
        std::vector<double> theta(static_cast<std::size_t>(gates));
        for (std::int64_t s = 0; s < samples; ++s) {
            const std::uint64_t circuit_seed = rng();
            Objective obj{build_random(n, gates, gates, circuit_seed),
                          Observable::z1(n), zero};
            for (double &t : theta) {
                t = angle(rng);
            }
            const double v = parameter_shift_grad(obj, theta).norm_squared();
            const double delta_v = v - mean;
            mean += delta_v / static_cast<double>(s + 1);
            m2 += delta_v * (v - mean);
        }
        ContrastRow rrow;
        rrow.arch = "random";
        rrow.n = n;
        rrow.n_params = gates;
        rrow.n_cnot = gates;
        rrow.estimate.mean = mean;
        rrow.estimate.std_error =
            std::sqrt(m2 / static_cast<double>(samples - 1) /
                      static_cast<double>(samples));
        rrow.estimate.mode = ExpectationMode::MonteCarlo;
        rrow.estimate.samples_or_gridpoints = samples;
        rrow.estimate.seed = derive_seed(n_seed, 1);
        rows.push_back(rrow);
    }
    return rows;
}

bool random_means_strictly_decrease(std::span<const ContrastRow> rows) {
    std::optional<double> previous;
    for (const ContrastRow &r : rows) {
        if (r.arch != "random") {
            continue;
        }
        if (previous && !(r.estimate.mean < *previous)) {
            return false;
        }
        previous = r.estimate.mean;
    }
    return true;
}

void to_json(nlohmann::json &j, const ExpectationReport &r) {
    j = nlohmann::json{{"mean", r.mean},
                       {"stderr", r.std_error},
                       {"mode", to_string(r.mode)},
                       {"samples_or_gridpoints", r.samples_or_gridpoints}};
    j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json &j, const BoundReport &r) {
    j = nlohmann::json{{"arch", r.arch},
                       {"n", r.n},
                       {"mode", to_string(r.estimate.mode)},
                       {"mean", r.estimate.mean},
                       {"stderr", r.estimate.std_error},
                       {"samples_or_gridpoints",
                        r.estimate.samples_or_gridpoints},
                       {"lower", r.lower_bound},
                       {"upper", r.upper_bound},
                       {"alpha", r.alpha},
                       {"satisfied", r.satisfied}};
    j["n_c"] = r.n_c ? nlohmann::json(*r.n_c) : nlohmann::json(nullptr);
    j["L"] = r.L ? nlohmann::json(*r.L) : nlohmann::json(nullptr);
    j["seed"] = r.estimate.seed ? nlohmann::json(*r.estimate.seed)
                                : nlohmann::json(nullptr);
}

void to_json(nlohmann::json &j, const DerivativeEqualityReport &r) {
    j = nlohmann::json{{"arch", r.arch},
                       {"n", r.n},
                       {"layer", r.layer},
                       {"slot", r.slot},
                       {"derivative_sq", r.derivative_sq},
                       {"variance", r.variance},
                       {"residual", r.residual},
                       {"variance_lower_bound", r.variance_lower_bound},
                       {"alpha", r.alpha},
                       {"equality_holds", r.equality_holds},
                       {"variance_bound_holds", r.variance_bound_holds}};
}

void to_json(nlohmann::json &j, const ConjugationCase &c) {
    j = nlohmann::json{{"j", c.j},
                       {"k", c.k},
                       {"max_error", c.max_error},
                       {"pass", c.pass}};
}

void to_json(nlohmann::json &j, const IntegrationCase &c) {
    j = nlohmann::json{{"j", c.j},
                       {"k", c.k},
                       {"pair", c.pair},
                       {"rotation_residual", c.rotation_residual},
                       {"derivative_residual", c.derivative_residual},
                       {"pass", c.pass}};
}

void to_json(nlohmann::json &j, const ContrastRow &r) {
    j = nlohmann::json{{"arch", r.arch},
                       {"n", r.n},
                       {"n_params", r.n_params},
                       {"n_cnot", r.n_cnot},
                       {"estimate", r.estimate},
                       {"lower", r.lower_bound},
                       {"above_lower_bound", r.above_lower_bound}};
}

std::string bound_csv_header() {
    return "arch,n,n_c,L,mode,mean,stderr,lower,upper,alpha,satisfied,seed";
}

std::string to_csv_row(const BoundReport &r) {
    return csv_join({r.arch, std::to_string(r.n),
                     r.n_c ? std::to_string(*r.n_c) : std::string{},
                     r.L ? std::to_string(*r.L) : std::string{},
                     to_string(r.estimate.mode), format_double(r.estimate.mean),
                     format_double(r.estimate.std_error),
                     format_double(r.lower_bound), format_double(r.upper_bound),
                     format_double(r.alpha), r.satisfied ? "true" : "false",
                     r.estimate.seed ? std::to_string(*r.estimate.seed)
                                     : std::string{}});
}

} // namespace qnnlab
