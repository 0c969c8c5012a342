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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qnnlab/state_vector.hpp"

namespace qnnlab {
namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<double> amps(std::size_t{1} << n);
    for (double &a : amps) {
        a = g(rng);
    }
    return StateVector::amplitude_encode(amps);
}

std::vector<GateOp> all_gates(int n) {
    std::vector<GateOp> gates;
    for (int q = 1; q <= n; ++q) {
        gates.push_back(GateOp::ry(q, 0));
        gates.push_back(GateOp::ry(q, 0, -1));
        gates.push_back(GateOp::x(q));
        for (int t = 1; t <= n; ++t) {
            if (t != q) {
                gates.push_back(GateOp::cnot(q, t));
                gates.push_back(GateOp::cz(q, t));
            }
        }
    }
    return gates;
}

TEST(BasisState, QubitOneIsMostSignificant) {
    const auto s00 = StateVector::basis(2, "00");
    const auto s10 = StateVector::basis(2, "10");
    const auto s1 = StateVector::basis(1, "1");
    EXPECT_EQ(std::vector<double>(s00.amplitudes().begin(), s00.amplitudes().end()),
              (std::vector<double>{1, 0, 0, 0}));
    EXPECT_EQ(std::vector<double>(s10.amplitudes().begin(), s10.amplitudes().end()),
              (std::vector<double>{0, 0, 1, 0}));
    EXPECT_EQ(std::vector<double>(s1.amplitudes().begin(), s1.amplitudes().end()),
              (std::vector<double>{0, 1}));
}

TEST(BasisState, RejectsBadInput) {
    EXPECT_THROW((void)StateVector::basis(2, "0"), std::invalid_argument);
    EXPECT_THROW((void)StateVector::basis(2, "0a"), std::invalid_argument);
    EXPECT_THROW((void)StateVector::from_amplitudes({1.0, 1.0}),
                 std::invalid_argument);
    EXPECT_THROW((void)StateVector::from_amplitudes({1.0, 0.0, 0.0}),
                 std::invalid_argument);
}

TEST(ApplyGate, RyQuarterTurnMakesPlusState) {
    const std::vector<double> theta{kPi / 4};
    const auto s = apply_gate(StateVector::zeros(1), GateOp::ry(1, 0), theta);
    EXPECT_NEAR(s.amplitudes()[0], std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(s.amplitudes()[1], std::sqrt(0.5), 1e-15);
}

TEST(ApplyGate, CnotFlipsTargetWhenControlIsOne) {
    // control 2, target 1 on |01>.
    const auto s = apply_gate(StateVector::basis(2, "01"), GateOp::cnot(2, 1), {});
    EXPECT_DOUBLE_EQ(s.amplitudes()[3], 1.0);
}

TEST(ApplyGate, CzPhasesElevenOnly) {
    const double h = std::sqrt(0.5);
    const auto in = StateVector::from_amplitudes({0, h, 0, h});
    const auto s = apply_gate(in, GateOp::cz(1, 2), {});
    EXPECT_NEAR(s.amplitudes()[1], h, 1e-15);
    EXPECT_NEAR(s.amplitudes()[3], -h, 1e-15);
}

TEST(ApplyGate, ValidationRejectsMalformedGates) {
    GateOp same = GateOp::cnot(1, 2);
    same.qubits = {2, 2};
    EXPECT_THROW(same.validate(2), std::invalid_argument);
    EXPECT_THROW(GateOp::x(3).validate(2), std::out_of_range);
    EXPECT_THROW(GateOp::cnot(0, 1).validate(2), std::out_of_range);
    GateOp no_slot = GateOp::ry(1, 0);
    no_slot.param_slot.reset();
    EXPECT_THROW(no_slot.validate(1), std::invalid_argument);
    GateOp stray = GateOp::x(1);
    stray.param_slot = 0;
    EXPECT_THROW(stray.validate(1), std::invalid_argument);
}

TEST(ApplyGateProperty, PreservesNorm) {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 4; ++n) {
        for (const GateOp &g : all_gates(n)) {
            const std::vector<double> theta{std::uniform_real_distribution<>(0, 7)(rng)};
            const auto s = apply_gate(random_state(n, rng), g, theta);
            double norm = 0.0;
            for (double a : s.amplitudes()) {
                norm += a * a;
            }
            EXPECT_NEAR(norm, 1.0, 1e-10);
        }
    }
}

TEST(ApplyGateProperty, IsLinear) {
    std::mt19937_64 rng(2);
    const int n = 3;
    for (const GateOp &g : all_gates(n)) {
        const std::vector<double> theta{0.83};
        const auto p1 = random_state(n, rng);
        const auto p2 = random_state(n, rng);
        const double a = 0.6;
        const double b = 0.8;
        std::vector<double> mix(p1.dim());
        double norm = 0.0;
        for (std::size_t i = 0; i < mix.size(); ++i) {
            mix[i] = a * p1.amplitudes()[i] + b * p2.amplitudes()[i];
            norm += mix[i] * mix[i];
        }
        norm = std::sqrt(norm);
        for (double &v : mix) {
            v /= norm;
        }
        const auto m = apply_gate(StateVector::from_amplitudes(mix), g, theta);
        const auto q1 = apply_gate(p1, g, theta);
        const auto q2 = apply_gate(p2, g, theta);
        for (std::size_t i = 0; i < mix.size(); ++i) {
            EXPECT_NEAR(m.amplitudes()[i],
                        (a * q1.amplitudes()[i] + b * q2.amplitudes()[i]) / norm,
                        1e-12);
        }
    }
}

TEST(ApplyGateProperty, SelfInverse) {
    std::mt19937_64 rng(3);
    const int n = 3;
    const std::vector<double> theta{1.234};
    for (int q = 1; q <= n; ++q) {
        for (int t = 1; t <= n; ++t) {
            const auto psi = random_state(n, rng);
            std::vector<std::pair<GateOp, GateOp>> pairs{
                {GateOp::x(q), GateOp::x(q)},
                {GateOp::ry(q, 0), GateOp::ry(q, 0, -1)}};
            if (t != q) {
                pairs.push_back({GateOp::cnot(q, t), GateOp::cnot(q, t)});
                pairs.push_back({GateOp::cz(q, t), GateOp::cz(q, t)});
            }
            for (const auto &[g1, g2] : pairs) {
                const auto back = apply_gate(apply_gate(psi, g1, theta), g2, theta);
                for (std::size_t i = 0; i < psi.dim(); ++i) {
                    EXPECT_NEAR(back.amplitudes()[i], psi.amplitudes()[i], 1e-12);
                }
            }
        }
    }
}

TEST(ApplyGateProperty, MatchesKroneckerOracle) {
    std::mt19937_64 rng(4);
    for (int n = 1; n <= 4; ++n) {
        for (const GateOp &g : all_gates(n)) {
            const double angle = std::uniform_real_distribution<>(0, 7)(rng);
            const std::vector<double> theta{angle};
            const auto psi = random_state(n, rng);
            const auto got = apply_gate(psi, g, theta);
            const Eigen::VectorXd want =
                testing::dense_gate(g, n, angle) * testing::to_eigen(psi.amplitudes());
            for (std::size_t i = 0; i < psi.dim(); ++i) {
                EXPECT_NEAR(got.amplitudes()[i], want(static_cast<Eigen::Index>(i)),
                            1e-10);
            }
        }
    }
}

TEST(PauliExpectation, Examples) {
    const double h = std::sqrt(0.5);
    const auto plus0 = StateVector::from_amplitudes({h, 0, h, 0});
    EXPECT_DOUBLE_EQ(pauli_expectation(StateVector::zeros(2), PauliString::parse("ZI")), 1.0);
    EXPECT_NEAR(pauli_expectation(plus0, PauliString::parse("ZI")), 0.0, 1e-15);
    EXPECT_NEAR(pauli_expectation(plus0, PauliString::parse("XI")), 1.0, 1e-15);
    EXPECT_NEAR(pauli_expectation(plus0, PauliString::parse("YI")), 0.0, 1e-15);
}

TEST(PauliExpectation, YYOnRealStateMatchesDenseComplexProduct) {
    // Two Y factors give a real, generally non-zero value: <Bell|YY|Bell> = -1.
    const double h = std::sqrt(0.5);
    const auto bell = StateVector::from_amplitudes({h, 0, 0, h});
    EXPECT_NEAR(pauli_expectation(bell, PauliString::parse("YY")), -1.0, 1e-15);
    EXPECT_NEAR(pauli_expectation(bell, PauliString::parse("XX")), 1.0, 1e-15);
    EXPECT_NEAR(pauli_expectation(bell, PauliString::parse("ZZ")), 1.0, 1e-15);
}

TEST(PauliExpectation, LengthMismatchThrows) {
    EXPECT_THROW((void)pauli_expectation(StateVector::zeros(2),
                                         PauliString::parse("Z")),
                 std::invalid_argument);
    EXPECT_THROW((void)PauliString::parse("ZQ"), std::invalid_argument);
}

TEST(Sampling, DeterministicStates) {
    std::mt19937_64 rng(0);
    const auto c0 = sample_bitstrings(StateVector::zeros(1), 100, rng);
    EXPECT_EQ(c0.counts.at("0"), 100);
    const auto c1 = sample_bitstrings(StateVector::basis(1, "1"), 5, rng);
    EXPECT_EQ(c1.counts.at("1"), 5);
    EXPECT_EQ(c1.counts.size(), 1u);
}

TEST(Sampling, PlusStateWithinThreeSigma) {
    std::mt19937_64 rng(42);
    const double h = std::sqrt(0.5);
    const auto c = sample_bitstrings(StateVector::from_amplitudes({h, h}), 10000, rng);
    EXPECT_EQ(c.shots, 10000);
    EXPECT_EQ(c.counts.at("0") + c.counts.at("1"), 10000);
    EXPECT_NEAR(static_cast<double>(c.counts.at("0")) / 10000.0, 0.5, 3 * 0.005);
}

TEST(Sampling, RejectsNonPositiveShots) {
    std::mt19937_64 rng(0);
    EXPECT_THROW((void)sample_bitstrings(StateVector::zeros(1), 0, rng),
                 std::invalid_argument);
}

TEST(EstimateFromShots, Examples) {
    ShotCounts c;
    c.counts = {{"00", 100}};
    c.shots = 100;
    EXPECT_DOUBLE_EQ(estimate_f_from_shots(c, 1), 1.0);
    ShotCounts d;
    d.counts = {{"10", 30}, {"00", 70}};
    d.shots = 100;
    EXPECT_DOUBLE_EQ(estimate_f_from_shots(d, 1), 0.7);
    EXPECT_DOUBLE_EQ(estimate_f_from_shots(d, 2), 1.0);
}

TEST(EstimateFromShots, UnbiasedOverSeeds) {
    // f = P(qubit 1 reads 0) = cos^2(0.7) for RY(0.7)|0>.
    const std::vector<double> theta{0.7};
    const auto s = apply_gate(StateVector::zeros(1), GateOp::ry(1, 0), theta);
    const double p = std::cos(0.7) * std::cos(0.7);
    const int shots = 200;
    const int seeds = 1000;
    double mean = 0.0;
    for (int seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        mean += estimate_f_from_shots(sample_bitstrings(s, shots, rng), 1);
    }
    mean /= seeds;
    EXPECT_NEAR(mean, p, 3.0 * std::sqrt(p * (1 - p) / shots) / std::sqrt(seeds));
}

} // namespace
} // namespace qnnlab
