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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qnnlab/learn.hpp"
#include "qnnlab/circuit.hpp"
#include "qnnlab_cli/cli.hpp"

namespace qnnlab {
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code{0};
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string> &args) {
    std::vector<const char *> argv{"qnnlab"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code =
        cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const fs::path &p) { return nlohmann::json::parse(slurp(p)); }

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                (std::string("qnnlab_cli_") +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    std::string dir(const std::string &name) const { return (root_ / name).string(); }

    fs::path root_;
};

TEST_F(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
    EXPECT_EQ(run_cli({}).code, cli::kExitConfigError);
    EXPECT_EQ(run_cli({"no-such-command"}).code, cli::kExitConfigError);
    EXPECT_EQ(run_cli({"verify-bounds", "--arch", "nope"}).code,
              cli::kExitConfigError);
    EXPECT_EQ(run_cli({"verify-bounds", "--n", "abc"}).code, cli::kExitConfigError);
}

TEST_F(Cli, LemmaCheckWritesSnapshotAndTable) {
    const RunResult r = run_cli({"lemma-check", "--out", dir("a"), "--seed", "5"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(root_ / "a" / "lemma_check.csv"));
    const nlohmann::json snap = read_json(root_ / "a" / "config.json");
    EXPECT_EQ(snap.at("schema_version"), cli::kConfigSchemaVersion);
    EXPECT_EQ(snap.at("command"), "lemma-check");
    EXPECT_EQ(snap.at("settings").at("seed"), 5);
    EXPECT_EQ(snap.at("settings").at("pairs"), 20);
}

TEST_F(Cli, JsonSummaryOnStdout) {
    const RunResult r = run_cli(
        {"verify-bounds", "--arch", "tt", "--n", "2", "--out", dir("a"), "--json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_NEAR(j.at("bounds").at(0).at("lower").get<double>(), 0.5, 1e-12);
}

TEST_F(Cli, JsonFormatWritesJsonArtifacts) {
    const RunResult r = run_cli({"verify-bounds", "--n", "2", "--format", "json",
                                 "--out", dir("a")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(root_ / "a" / "bounds.json"));
    EXPECT_FALSE(fs::exists(root_ / "a" / "bounds.csv"));
}

TEST_F(Cli, BudgetRefusalExitsWithHint) {
    const RunResult r = run_cli({"verify-bounds", "--arch", "encoder", "--n", "4",
                                 "--out", dir("a")});
    EXPECT_EQ(r.code, cli::kExitConfigError);
    EXPECT_NE(r.err.find("--mode mc"), std::string::npos);
}

TEST_F(Cli, InvalidArchitectureSizeIsConfigError) {
    EXPECT_EQ(run_cli({"verify-bounds", "--arch", "tt", "--n", "3", "--out", dir("a")})
                  .code,
              cli::kExitConfigError);
}

TEST_F(Cli, VerdictDoesNotDependOnSeed) {
    for (const char *seed : {"1", "2", "3"}) {
        const RunResult r = run_cli({"verify-bounds", "--arch", "sc", "--n", "4",
                                     "--n-c", "2", "--mode", "mc", "--samples",
                                     "300", "--seed", seed, "--out",
                                     dir(std::string("s") + seed), "--json"});
        EXPECT_EQ(r.code, cli::kExitOk) << seed << r.err;
        EXPECT_TRUE(nlohmann::json::parse(r.out).at("pass").get<bool>());
    }
}

TEST_F(Cli, FlagsOverrideConfigFileAndUnknownKeysFail) {
    const fs::path cfg = root_ / "cfg.json";
    std::ofstream(cfg) << R"({"settings": {"n": 4, "arch": "tt", "seed": 9}})";
    const RunResult r = run_cli(
        {"verify-bounds", "--config", cfg.string(), "--n", "2", "--out", dir("a")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const nlohmann::json snap = read_json(root_ / "a" / "config.json");
    EXPECT_EQ(snap.at("settings").at("n"), 2);
    EXPECT_EQ(snap.at("settings").at("seed"), 9);

    const fs::path bad = root_ / "bad.json";
    std::ofstream(bad) << R"({"n": 2, "bogus": 1})";
    EXPECT_EQ(run_cli({"verify-bounds", "--config", bad.string(), "--out", dir("b")})
                  .code,
              cli::kExitConfigError);
    EXPECT_EQ(run_cli({"verify-bounds", "--config", (root_ / "missing.json").string(),
                       "--out", dir("c")})
                  .code,
              cli::kExitConfigError);
}

TEST_F(Cli, OutDirFromEnvironment) {
    ::setenv(cli::kOutDirEnv, dir("env").c_str(), 1);
    const RunResult r = run_cli({"verify-bounds", "--n", "2"});
    ::unsetenv(cli::kOutDirEnv);
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(root_ / "env" / "bounds.csv"));
}

TEST_F(Cli, GeneratedSeedIsRecorded) {
    ASSERT_EQ(run_cli({"lemma-check", "--out", dir("a")}).code, cli::kExitOk);
    const nlohmann::json snap = read_json(root_ / "a" / "config.json");
    EXPECT_TRUE(snap.at("settings").at("seed").is_number_unsigned());
}

TEST_F(Cli, ClassifyReplayFromSnapshotIsByteIdentical) {
    const std::vector<std::string> common{"classify", "--n", "2", "--per-class", "20",
                                          "--test-per-class", "10", "--iters", "10",
                                          "--shots-train", "50", "--shots-test", "100"};
    auto first = common;
    first.insert(first.end(), {"--out", dir("a")});
    const RunResult r1 = run_cli(first);
    ASSERT_EQ(r1.code, cli::kExitOk) << r1.err;
    const RunResult r2 = run_cli({"classify", "--config",
                                  (root_ / "a" / "config.json").string(), "--out",
                                  dir("b")});
    ASSERT_EQ(r2.code, cli::kExitOk) << r2.err;
    for (const char *f : {"config.json", "model.json", "history.csv", "metrics.csv"}) {
        EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
    }
    const std::string metrics = slurp(root_ / "a" / "metrics.csv");
    EXPECT_EQ(metrics.rfind("pair,arch,n,train_acc,test_acc,f1_0,f1_1", 0), 0U);
}

TEST_F(Cli, RandomMatchCopiesGateCounts) {
    const RunResult r = run_cli({"classify", "--arch", "random", "--match", "tt",
                                 "--n", "4", "--per-class", "20", "--test-per-class",
                                 "10", "--iters", "2", "--shots-train", "0",
                                 "--shots-test", "0", "--out", dir("a")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const nlohmann::json model = read_json(root_ / "a" / "model.json");
    const CircuitSpec c = model.at("circuit").get<CircuitSpec>();
    EXPECT_EQ(c.count(GateKind::RY), 7);
    EXPECT_EQ(c.count(GateKind::CNOT), 3);
    EXPECT_EQ(model.at("observable").size(), 4U);
}

TEST_F(Cli, TrainEncoderJsonReloadReproducesState) {
    const RunResult r = run_cli({"train-encoder", "--input-vector",
                                 "1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0", "--iters", "100",
                                 "--seed", "3", "--out", dir("a")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const nlohmann::json doc = read_json(root_ / "a" / "encoder.json");
    const CircuitSpec u = doc.at("u_circuit").get<CircuitSpec>();
    const nlohmann::json &entry = doc.at("encodings").at(0);
    const auto beta = entry.at("beta").get<std::vector<double>>();
    const StateVector prepared = run_circuit(StateVector::zeros(4), u, beta);
    EXPECT_NEAR(overlap(StateVector::zeros(4), prepared),
                entry.at("fidelity").get<double>(), 1e-12);
    EXPECT_GE(entry.at("fidelity").get<double>(), 0.99);
    EXPECT_TRUE(fs::exists(root_ / "a" / "encoder.csv"));
}

TEST_F(Cli, TrainEncoderExactEncoding) {
    const RunResult r =
        run_cli({"train-encoder", "--input-vector", "3,4", "--exact-encoding",
                 "--out", dir("a"), "--json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const nlohmann::json doc = read_json(root_ / "a" / "encoder.json");
    const auto amps =
        doc.at("encodings").at(0).at("amplitudes").get<std::vector<double>>();
    EXPECT_DOUBLE_EQ(amps[0], 0.6);
    EXPECT_DOUBLE_EQ(amps[1], 0.8);
    EXPECT_EQ(run_cli({"train-encoder", "--out", dir("b")}).code,
              cli::kExitConfigError);
}

TEST_F(Cli, BarrenPlateauSmallRun) {
    const RunResult r = run_cli({"barren-plateau", "--n-list", "4,6", "--samples",
                                 "100", "--seed", "2", "--out", dir("a")});
    EXPECT_NE(r.code, cli::kExitConfigError) << r.err;
    const std::string csv = slurp(root_ / "a" / "contrast.csv");
    EXPECT_EQ(csv.rfind("arch,n,n_params,n_cnot,mean,stderr,samples,lower,above_lower",
                        0),
              0U);
}

} // namespace
} // namespace qnnlab
