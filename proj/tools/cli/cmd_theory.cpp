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

// lemma-check, verify-bounds and barren-plateau.

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include "command.hpp"
#include "qnnlab_cli/cli.hpp"
#include "qnnlab/csv.hpp"
#include "qnnlab/seeding.hpp"
#include "qnnlab/theory.hpp"

namespace qnnlab::cli {

namespace {

// Stream ids under the base seed.
constexpr std::uint64_t kInputStream = 0x1000;
constexpr std::uint64_t kBoundStream = 0;
constexpr std::uint64_t kEqualityStream = 1;

std::vector<double> parse_double_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw ConfigError("not a number: '" + item + "'");
        }
    }
    return out;
}

/**
 * Input state for verify-bounds:
 *   zeros               |0...0>
 *   basis:0110          computational basis state, qubit 1 first
 *   product:a1,...,an   RY(a_i)|0> on each qubit
 *   random-product      product state with angles drawn from the seed
 */
StateVector parse_input_state(const std::string &text, int n,
                              std::uint64_t seed) {
    if (text == "zeros") {
        return StateVector::zeros(n);
    }
    if (text == "random-product") {
        std::mt19937_64 rng(derive_seed(seed, kInputStream));
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<double> angles(static_cast<std::size_t>(n));
        for (double &a : angles) {
            a = angle(rng);
        }
        return StateVector::product(angles);
    }
    if (text.rfind("basis:", 0) == 0) {
        return StateVector::basis(n, text.substr(6));
    }
    if (text.rfind("product:", 0) == 0) {
        const std::vector<double> angles = parse_double_list(text.substr(8));
        if (angles.size() != static_cast<std::size_t>(n)) {
            throw ConfigError("product input needs " + std::to_string(n) +
                              " angles");
        }
        return StateVector::product(angles);
    }
    throw ConfigError("unknown input '" + text +
                      "' (zeros, basis:BITS, product:ANGLES, random-product)");
}

VerifyMode parse_mode(const Context &ctx, std::uint64_t stream) {
    const auto mode = ctx.get<std::string>("mode");
    if (mode == "exact") {
        return VerifyMode::exact(ctx.get<std::int64_t>("budget"));
    }
    if (mode == "mc") {
        return VerifyMode::monte_carlo(ctx.get<std::int64_t>("samples"),
                                       derive_seed(ctx.seed(), stream));
    }
    throw ConfigError("mode must be exact or mc");
}

std::string equality_csv_header() {
    return "arch,n,layer,slot,mode,derivative_sq,variance,residual,"
           "residual_stderr,variance_lower,alpha,equality_holds,"
           "variance_bound_holds";
}

std::string to_csv_row(const DerivativeEqualityReport &r) {
    return csv_join({r.arch, std::to_string(r.n), std::to_string(r.layer),
                     std::to_string(r.slot), to_string(r.residual.mode),
                     format_double(r.derivative_sq.mean),
                     format_double(r.variance.mean),
                     format_double(r.residual.mean),
                     format_double(r.residual.std_error),
                     format_double(r.variance_lower_bound),
                     format_double(r.alpha), bool_field(r.equality_holds),
                     bool_field(r.variance_bound_holds)});
}

int run_lemma_check(const Context &ctx) {
    const auto pairs = ctx.get<int>("pairs");
    if (pairs < 1) {
        throw ConfigError("pairs must be >= 1");
    }
    const ConjugationReport cnot = check_cnot_conjugation();
    const ConjugationReport cz = check_cz_conjugation();
    const IntegrationSuiteReport integ = check_integration_suite(pairs, ctx.seed());

    std::vector<std::string> rows;
    nlohmann::json cases = nlohmann::json::array();
    for (const ConjugationReport *rep : {&cnot, &cz}) {
        for (const ConjugationCase &c : rep->cases) {
            rows.push_back(csv_join({rep->gate, std::to_string(c.j),
                                     std::to_string(c.k), "", "",
                                     format_double(c.max_error), "",
                                     bool_field(c.pass)}));
            nlohmann::json row = c;
            row["suite"] = rep->gate;
            cases.push_back(row);
        }
    }
    for (const IntegrationCase &c : integ.cases) {
        rows.push_back(csv_join({"integration", std::to_string(c.j),
                                 std::to_string(c.k), std::to_string(c.pair),
                                 format_double(c.rotation_residual),
                                 "", format_double(c.derivative_residual),
                                 bool_field(c.pass)}));
        nlohmann::json row = c;
        row["suite"] = "integration";
        cases.push_back(row);
    }
    const bool pass = cnot.all_pass() && cz.all_pass() && integ.all_pass();
    const nlohmann::json doc{{"seed", ctx.seed()},
                             {"pass", pass},
                             {"cases", cases}};
    if (ctx.format == "csv") {
        write_output(ctx, "lemma_check.csv",
                     csv_document("suite,j,k,pair,rotation_residual,"
                                  "conjugation_error,derivative_residual,pass",
                                  rows));
    } else {
        write_json(ctx, "lemma_check.json", doc);
    }

    if (ctx.json_stdout) {
        ctx.out << doc.dump(2) << "\n";
    } else {
        auto summary = [&](const std::string &name, std::size_t total,
                           std::size_t passed, double worst) {
            ctx.out << name << std::string(14 - name.size(), ' ') << passed
                    << "/" << total << " pass, max error "
                    << format_double(worst) << "\n";
        };
        for (const ConjugationReport *rep : {&cnot, &cz}) {
            double worst = 0.0;
            std::size_t ok = 0;
            for (const ConjugationCase &c : rep->cases) {
                worst = std::max(worst, c.max_error);
                ok += c.pass ? 1 : 0;
            }
            summary(rep->gate + " conj", rep->cases.size(), ok, worst);
        }
        double worst = 0.0;
        std::size_t ok = 0;
        for (const IntegrationCase &c : integ.cases) {
            worst = std::max({worst, c.rotation_residual, c.derivative_residual});
            ok += c.pass ? 1 : 0;
        }
        summary("integration", integ.cases.size(), ok, worst);
        ctx.out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitVerificationFailed;
}

int run_verify_bounds(const Context &ctx) {
    const auto arch = ctx.get<std::string>("arch");
    const auto n = ctx.get<int>("n");
    const StateVector input =
        parse_input_state(ctx.get<std::string>("input"), n, ctx.seed());

    std::vector<BoundReport> bounds;
    std::vector<DerivativeEqualityReport> equalities;
    if (arch == "encoder") {
        bounds.push_back(verify_encoder_alpha_bound(n, ctx.get<int>("L"),
                                                    parse_mode(ctx, kBoundStream)));
    } else {
        ArchitectureKind kind;
        if (arch == "tt") {
            kind = TreeTensor{};
        } else if (arch == "dtt") {
            kind = DeformedTreeTensor{};
        } else if (arch == "sc") {
            kind = StepControlled{ctx.get<int>("n_c")};
        } else {
            throw ConfigError("arch must be tt, sc, dtt or encoder");
        }
        bounds.push_back(verify_gradient_norm_bound(
            kind, n, input, parse_mode(ctx, kBoundStream)));
        if (ctx.get<bool>("equality")) {
            const std::vector<int> layers =
                first_channel_layers(build_architecture(kind, n));
            for (std::size_t i = 0; i < layers.size(); ++i) {
                equalities.push_back(verify_derivative_equality(
                    kind, n, layers[i], input,
                    parse_mode(ctx, kEqualityStream + i)));
            }
        }
    }

    bool pass = true;
    std::vector<std::string> bound_rows;
    for (const BoundReport &b : bounds) {
        pass = pass && b.satisfied;
        bound_rows.push_back(to_csv_row(b));
    }
    std::vector<std::string> eq_rows;
    for (const DerivativeEqualityReport &r : equalities) {
        pass = pass && r.equality_holds && r.variance_bound_holds;
        eq_rows.push_back(to_csv_row(r));
    }
    const nlohmann::json doc{{"bounds", bounds},
                             {"derivative_equality", equalities},
                             {"pass", pass}};
    if (ctx.format == "csv") {
        write_output(ctx, "bounds.csv", csv_document(bound_csv_header(), bound_rows));
        if (!equalities.empty()) {
            write_output(ctx, "derivative_equality.csv",
                         csv_document(equality_csv_header(), eq_rows));
        }
    } else {
        write_json(ctx, "bounds.json", doc);
    }

    if (ctx.json_stdout) {
        ctx.out << doc.dump(2) << "\n";
    } else {
        for (const BoundReport &b : bounds) {
            ctx.out << b.arch << " n=" << b.n << ": lower "
                    << format_double(b.lower_bound) << " <= "
                    << format_double(b.estimate.mean) << " (se "
                    << format_double(b.estimate.std_error) << ")";
            if (b.upper_bound > 0.0) {
                ctx.out << " <= " << format_double(b.upper_bound);
            }
            ctx.out << ", alpha " << format_double(b.alpha) << " -> "
                    << (b.satisfied ? "satisfied" : "VIOLATED") << "\n";
        }
        for (const DerivativeEqualityReport &r : equalities) {
            ctx.out << "  layer " << r.layer << " slot " << r.slot
                    << ": E(df)^2 " << format_double(r.derivative_sq.mean)
                    << ", 4E(f-1/2)^2 " << format_double(4.0 * r.variance.mean)
                    << ", residual " << format_double(r.residual.mean) << " -> "
                    << (r.equality_holds && r.variance_bound_holds ? "ok"
                                                                   : "FAILED")
                    << "\n";
        }
        ctx.out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitVerificationFailed;
}

int run_barren_plateau(const Context &ctx) {
    const auto n_list = ctx.get<std::vector<int>>("n_list");
    const std::vector<ContrastRow> rows = barren_plateau_contrast(
        n_list, ctx.get<double>("depth_factor"),
        ctx.get<std::int64_t>("samples"), ctx.seed());

    bool structured_ok = true;
    std::vector<std::string> csv_rows;
    for (const ContrastRow &r : rows) {
        structured_ok = structured_ok && r.above_lower_bound;
        csv_rows.push_back(csv_join(
            {r.arch, std::to_string(r.n), std::to_string(r.n_params),
             std::to_string(r.n_cnot), format_double(r.estimate.mean),
             format_double(r.estimate.std_error),
             std::to_string(r.estimate.samples_or_gridpoints),
             format_double(r.lower_bound), bool_field(r.above_lower_bound)}));
    }
    const bool decreasing = random_means_strictly_decrease(rows);
    const bool pass = structured_ok && decreasing;
    const nlohmann::json doc{{"rows", rows},
                             {"random_strictly_decreasing", decreasing},
                             {"structured_above_bounds", structured_ok},
                             {"pass", pass}};
    if (ctx.format == "csv") {
        write_output(ctx, "contrast.csv",
                     csv_document("arch,n,n_params,n_cnot,mean,stderr,samples,"
                                  "lower,above_lower",
                                  csv_rows));
    } else {
        write_json(ctx, "contrast.json", doc);
    }
    if (ctx.json_stdout) {
        ctx.out << doc.dump(2) << "\n";
    } else {
        for (const ContrastRow &r : rows) {
            ctx.out << r.arch << " n=" << r.n << " params=" << r.n_params
                    << " mean " << format_double(r.estimate.mean) << " (se "
                    << format_double(r.estimate.std_error) << ")";
            if (r.lower_bound > 0.0) {
                ctx.out << " lower " << format_double(r.lower_bound);
            }
            ctx.out << "\n";
        }
        ctx.out << "random means strictly decreasing: "
                << bool_field(decreasing) << "\n"
                << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitVerificationFailed;
}

} // namespace

Command lemma_check_command() {
    return {"lemma-check",
            "check the CNOT/CZ conjugation tables and the single-angle "
            "integration identities",
            [](Flags &f) {
                f.add_int("--pairs", "pairs", 20,
                          "random operator pairs per (j, k) combination");
            },
            run_lemma_check};
}

Command verify_bounds_command() {
    return {"verify-bounds",
            "estimate E||grad f||^2 (or E alpha for the encoder) and compare "
            "with the closed-form bounds",
            [](Flags &f) {
                f.add_string("--arch", "arch", "tt", "architecture",
                             {"tt", "sc", "dtt", "encoder"});
                f.add_int("--n", "n", 2, "number of qubits");
                f.add_int("--n-c", "n_c", 1, "SC control count");
                f.add_int("--L", "L", 1, "encoder depth");
                f.add_string("--mode", "mode", "exact",
                             "exact grid or Monte Carlo", {"exact", "mc"});
                f.add_int("--samples", "samples", 500, "Monte Carlo samples");
                f.add_string("--input", "input", "zeros",
                             "zeros | basis:BITS | product:ANGLES | "
                             "random-product");
                f.add_int("--budget", "budget", kDefaultGridBudget,
                          "maximum exact-grid points");
                f.add_switch("--equality", "equality",
                             "also check E(df/dtheta)^2 = 4E(f-1/2)^2 on "
                             "every first-channel layer");
            },
            run_verify_bounds};
}

Command barren_plateau_command() {
    return {"barren-plateau",
            "Monte Carlo gradient norms of tree circuits against random "
            "circuits with n^2 gates",
            [](Flags &f) {
                f.add_ints("--n-list", "n_list", {4, 6, 8, 10},
                           "qubit counts, comma separated");
                f.add_double("--depth-factor", "depth_factor", 1.0,
                             "random circuits get round(factor*n^2) RY and "
                             "as many CNOT gates");
                f.add_int("--samples", "samples", 500, "samples per row");
            },
            run_barren_plateau};
}

} // namespace qnnlab::cli
