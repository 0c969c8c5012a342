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

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qnnlab/architectures.hpp"
#include "qnnlab/gradients.hpp"

namespace qnnlab {
namespace {

struct Shape {
    std::vector<GateKind> kinds;
    std::vector<std::array<int, 2>> qubits;
};

Shape shape_of(const CircuitSpec &c) {
    Shape s;
    for (const GateOp &g : c.gates) {
        s.kinds.push_back(g.kind);
        s.qubits.push_back(g.arity() == 2 ? g.qubits : std::array<int, 2>{g.qubits[0], 0});
    }
    return s;
}

StateVector random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<double> amps(std::size_t{1} << n);
    for (double &a : amps) {
        a = g(rng);
    }
    return StateVector::amplitude_encode(amps);
}

std::vector<CircuitSpec> every_builder_output() {
    std::vector<CircuitSpec> out;
    for (int n : {2, 4, 8}) {
        out.push_back(build_tt(n));
    }
    for (int n = 2; n <= 12; ++n) {
        out.push_back(build_dtt(n));
        for (int n_c = 1; n_c <= n - 1; ++n_c) {
            out.push_back(build_sc(n, n_c));
        }
    }
    out.push_back(build_random(5, 9, 4, 77));
    out.push_back(build_alternating_w(4, 2));
    out.push_back(build_encoder_u(build_alternating_w(6, 1)));
    return out;
}

TEST(TreeTensor, FourQubitLayout) {
    const CircuitSpec c = build_tt(4);
    EXPECT_EQ(c.n_params, 7);
    std::vector<GateOp> want{GateOp::ry(1, 0),    GateOp::ry(2, 1),
                             GateOp::ry(3, 2),    GateOp::ry(4, 3),
                             GateOp::cnot(2, 1),  GateOp::cnot(4, 3),
                             GateOp::ry(1, 4),    GateOp::ry(3, 5),
                             GateOp::cnot(3, 1),  GateOp::ry(1, 6)};
    EXPECT_EQ(c.gates, want);
}

TEST(TreeTensor, TwoQubits) {
    const CircuitSpec c = build_tt(2);
    EXPECT_EQ(c.n_params, 3);
    EXPECT_EQ(c.count(GateKind::CNOT), 1u);
}

TEST(TreeTensor, RejectsNonPowersOfTwo) {
    EXPECT_THROW((void)build_tt(3), std::invalid_argument);
    EXPECT_THROW((void)build_tt(1), std::invalid_argument);
}

TEST(TreeTensor, SlotLabelsFollowLayers) {
    const CircuitSpec c = build_tt(4);
    EXPECT_EQ(c.slot_of(1, 1), 0);
    EXPECT_EQ(c.slot_of(1, 4), 3);
    EXPECT_EQ(c.slot_of(2, 2), 5);
    EXPECT_EQ(c.slot_of(3, 1), 6);
    EXPECT_EQ(c.slot_of(4, 1), -1);
    EXPECT_EQ(first_channel_layers(c), (std::vector<int>{1, 2, 3}));
}

TEST(DeformedTree, AgreesWithTreeAtPowersOfTwo) {
    for (int n : {2, 4, 8, 16}) {
        EXPECT_EQ(shape_of(build_dtt(n)).kinds, shape_of(build_tt(n)).kinds);
        EXPECT_EQ(build_dtt(n).gates, build_tt(n).gates);
    }
}

TEST(DeformedTree, TwelveQubitLayerSizes) {
    const CircuitSpec c = build_dtt(12);
    std::map<int, int> per_layer;
    for (const SlotLabel &l : c.slot_labels) {
        ++per_layer[l.layer];
    }
    EXPECT_EQ(per_layer, (std::map<int, int>{{1, 12}, {2, 6}, {3, 3}, {4, 1}, {5, 1}}));
}

TEST(DeformedTree, ThreeQubits) {
    EXPECT_EQ(build_dtt(3).n_params, 5);
}

TEST(StepControlled, FourQubitsTwoControls) {
    const CircuitSpec c = build_sc(4, 2);
    EXPECT_EQ(c.n_params, 7);
    std::vector<GateOp> want{GateOp::ry(1, 0),   GateOp::ry(2, 1),
                             GateOp::ry(3, 2),   GateOp::ry(4, 3),
                             GateOp::cnot(4, 3), GateOp::ry(3, 4),
                             GateOp::cnot(3, 1), GateOp::ry(1, 5),
                             GateOp::cnot(2, 1), GateOp::ry(1, 6)};
    EXPECT_EQ(c.gates, want);
}

TEST(StepControlled, SmallestInstance) {
    const CircuitSpec c = build_sc(2, 1);
    EXPECT_EQ(c.n_params, 3);
    ASSERT_EQ(c.count(GateKind::CNOT), 1u);
    EXPECT_EQ(c.gates[2], GateOp::cnot(2, 1));
}

TEST(StepControlled, RejectsInvalidControlCount) {
    EXPECT_THROW((void)build_sc(4, 0), std::invalid_argument);
    EXPECT_THROW((void)build_sc(4, 4), std::invalid_argument);
}

TEST(Builders, ParameterCountIsTwoNMinusOne) {
    for (int n = 2; n <= 12; ++n) {
        EXPECT_EQ(build_dtt(n).n_params, 2 * n - 1) << n;
        for (int n_c = 1; n_c <= n - 1; ++n_c) {
            EXPECT_EQ(build_sc(n, n_c).n_params, 2 * n - 1) << n << "," << n_c;
        }
    }
}

TEST(Builders, OutputsSatisfyInvariants) {
    for (const CircuitSpec &c : every_builder_output()) {
        EXPECT_NO_THROW(c.validate()) << c.architecture;
    }
}

TEST(Builders, CircuitsAreUnitary) {
    std::mt19937_64 rng(5);
    for (const CircuitSpec &c : every_builder_output()) {
        if (c.n_qubits > 10) {
            continue;
        }
        const auto theta = testing::uniform_angles(c.n_params, rng);
        const StateVector psi = random_state(c.n_qubits, rng);
        const StateVector back =
            run_circuit(run_circuit(psi, c, theta), invert_circuit(c), theta);
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            ASSERT_NEAR(back[i], psi[i], 1e-12) << c.architecture;
        }
    }
}

TEST(RandomCircuit, DeterministicAndCounted) {
    EXPECT_EQ(build_random(8, 15, 7, 3), build_random(8, 15, 7, 3));
    EXPECT_NE(build_random(8, 15, 7, 3).gates, build_random(8, 15, 7, 4).gates);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const CircuitSpec c = build_random(4, 7, 3, seed);
        EXPECT_EQ(c.count(GateKind::RY), 7u);
        EXPECT_EQ(c.count(GateKind::CNOT), 3u);
    }
    const CircuitSpec single = build_random(2, 1, 0, 9);
    ASSERT_EQ(single.gates.size(), 1u);
    EXPECT_EQ(single.gates[0].kind, GateKind::RY);
}

TEST(Encoder, CzPairingAtFourQubits) {
    const CircuitSpec w = build_alternating_w(4, 1);
    std::vector<std::array<int, 2>> cz;
    for (const GateOp &g : w.gates) {
        if (g.kind == GateKind::CZ) {
            cz.push_back(g.qubits);
        }
    }
    EXPECT_EQ(cz, (std::vector<std::array<int, 2>>{{2, 3}, {4, 1}, {1, 2}, {3, 4}}));
}

TEST(Encoder, ParameterCounts) {
    EXPECT_EQ(build_alternating_w(8, 1).n_params, 24);
    EXPECT_EQ(build_alternating_w(8, 2).n_params, 40);
    EXPECT_THROW((void)build_alternating_w(5, 1), std::invalid_argument);
    EXPECT_THROW((void)build_alternating_w(4, 0), std::invalid_argument);
}

TEST(Encoder, ZeroAnglesPrepareAllOnes) {
    const CircuitSpec u = build_encoder_u(build_alternating_w(4, 1));
    const std::vector<double> beta(static_cast<std::size_t>(u.n_params), 0.0);
    const Eigen::VectorXd psi =
        testing::dense_run(u, testing::to_eigen(StateVector::zeros(4).amplitudes()), beta);
    EXPECT_NEAR(testing::dense_z(psi, 4, 1), -1.0, 1e-12);
    const StateVector got = run_circuit(StateVector::zeros(4), u, beta);
    EXPECT_NEAR(std::abs(got[15]), 1.0, 1e-12);
}

TEST(Encoder, InverseUndoesU) {
    std::mt19937_64 rng(6);
    const CircuitSpec u = build_encoder_u(build_alternating_w(4, 2));
    const auto beta = testing::uniform_angles(u.n_params, rng);
    const StateVector psi = random_state(4, rng);
    const StateVector back = run_circuit(run_circuit(psi, u, beta), invert_circuit(u), beta);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        EXPECT_NEAR(back[i], psi[i], 1e-12);
    }
}

TEST(Encoder, PerfectObjectiveMeansPerfectFidelity) {
    // If W(beta)|x> = |1...1> then U(beta)|0...0> = |x> up to sign.
    std::mt19937_64 rng(7);
    const CircuitSpec w = build_alternating_w(4, 1);
    const auto beta = testing::uniform_angles(w.n_params, rng);
    const StateVector x = run_circuit(StateVector::basis(4, "1111"), invert_circuit(w), beta);
    EXPECT_NEAR(Observable::mean_z(4).expectation(run_circuit(x, w, beta)), -1.0, 1e-12);
    const StateVector prepared = run_circuit(StateVector::zeros(4), build_encoder_u(w), beta);
    EXPECT_NEAR(overlap(x, prepared), 1.0, 1e-12);
}

TEST(Invert, IsAnInvolution) {
    for (const CircuitSpec &c : every_builder_output()) {
        EXPECT_EQ(invert_circuit(invert_circuit(c)), c);
    }
}

TEST(Invert, SingleRyRotatesBackwards) {
    CircuitSpec c;
    c.n_qubits = 1;
    c.n_params = 1;
    c.gates = {GateOp::ry(1, 0)};
    const std::vector<double> theta{0.4};
    const StateVector s = run_circuit(StateVector::zeros(1), invert_circuit(c), theta);
    EXPECT_NEAR(s[0], std::cos(0.4), 1e-15);
    EXPECT_NEAR(s[1], -std::sin(0.4), 1e-15);
}

TEST(RunCircuit, EmptyCircuitIsIdentity) {
    std::mt19937_64 rng(8);
    CircuitSpec c;
    c.n_qubits = 3;
    const StateVector psi = random_state(3, rng);
    EXPECT_EQ(run_circuit(psi, c, {}), psi);
}

TEST(RunCircuit, TreeAtZeroAnglesFixesZeros) {
    const std::vector<double> theta(3, 0.0);
    EXPECT_EQ(run_circuit(StateVector::zeros(2), build_tt(2), theta), StateVector::zeros(2));
}

TEST(RunCircuit, TreeFiresCnotWhenSecondQubitIsOne) {
    // theta for (layer 1, position 2) rotates qubit 2 to |1>.
    const CircuitSpec c = build_tt(2);
    std::vector<double> theta(3, 0.0);
    theta[static_cast<std::size_t>(c.slot_of(1, 2))] = std::numbers::pi / 2;
    const StateVector got = run_circuit(StateVector::zeros(2), c, theta);
    const Eigen::VectorXd want = testing::dense_run(
        c, testing::to_eigen(StateVector::zeros(2).amplitudes()), theta);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(got[i], want(static_cast<Eigen::Index>(i)), 1e-12);
    }
    EXPECT_NEAR(std::abs(got[3]), 1.0, 1e-12);
}

TEST(RunCircuit, MatchesKroneckerOracle) {
    std::mt19937_64 rng(9);
    for (const CircuitSpec &c : every_builder_output()) {
        if (c.n_qubits > 4) {
            continue;
        }
        const auto theta = testing::uniform_angles(c.n_params, rng);
        const StateVector psi = random_state(c.n_qubits, rng);
        const StateVector got = run_circuit(psi, c, theta);
        const Eigen::VectorXd want =
            testing::dense_run(c, testing::to_eigen(psi.amplitudes()), theta);
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            EXPECT_NEAR(got[i], want(static_cast<Eigen::Index>(i)), 1e-10);
        }
    }
}

TEST(RunCircuit, RejectsWrongParameterCount) {
    EXPECT_THROW((void)run_circuit(StateVector::zeros(2), build_tt(2),
                                   std::vector<double>(2, 0.0)),
                 std::out_of_range);
    EXPECT_THROW((void)run_circuit(StateVector::zeros(3), build_tt(2),
                                   std::vector<double>(3, 0.0)),
                 std::invalid_argument);
}

TEST(CircuitJson, RoundTrips) {
    for (const CircuitSpec &c : every_builder_output()) {
        const nlohmann::json j = c;
        EXPECT_EQ(j.get<CircuitSpec>(), c);
    }
}

TEST(CircuitSpecValidate, RejectsGapsInSlots) {
    CircuitSpec c;
    c.n_qubits = 1;
    c.n_params = 2;
    c.gates = {GateOp::ry(1, 0)};
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

} // namespace
} // namespace qnnlab
