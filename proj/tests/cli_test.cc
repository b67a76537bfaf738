/*
 * Copyright 2026 The BlindMatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "commands.h"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "blindmatch/random.h"

namespace blindmatch::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "blindmatch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> JsonLines(const fs::path& p) {
  std::vector<json> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("blindmatch-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // n=20, t=10, B=8; crime is profile 3 moved by at most one per entry.
  void MakeScenario(uint64_t seed = 1, size_t crime_of = 3) {
    Outcome g = Cli({"gen-db", "--t", "10", "--n", "20", "--range", "8", "--seed",
                     std::to_string(seed), "--out", Path("db.txt"), "--crime-out",
                     Path("crime.txt"), "--crime-of", std::to_string(crime_of),
                     "--max-delta", "1"});
    ASSERT_EQ(g.code, 0) << g.err;
  }

  fs::path dir_;
};

const std::string kTau = std::to_string(std::pow(10.0, 0.25) + 0.5);

TEST_F(CliTest, GenDbShapeAndDeterminism) {
  ASSERT_EQ(Cli({"gen-db", "--t", "10", "--n", "10", "--seed", "4", "--out", Path("a.txt")}).code, 0);
  ASSERT_EQ(Cli({"gen-db", "--t", "10", "--n", "10", "--seed", "4", "--out", Path("b.txt")}).code, 0);
  ASSERT_EQ(Cli({"gen-db", "--t", "10", "--n", "10", "--seed", "5", "--out", Path("c.txt")}).code, 0);
  EXPECT_EQ(Slurp(Path("a.txt")), Slurp(Path("b.txt")));
  EXPECT_NE(Slurp(Path("a.txt")), Slurp(Path("c.txt")));

  std::istringstream in(Slurp(Path("a.txt")));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t=10 p=65537 n=10");
  size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    ++lines;
    std::istringstream ls(line);
    std::vector<uint64_t> v;
    for (uint64_t x; ls >> x;) v.push_back(x);
    ASSERT_EQ(v.size(), 20u);
    for (uint64_t x : v) {
      EXPECT_GE(x, 1u);
      EXPECT_LE(x, 8u);
    }
  }
  EXPECT_EQ(lines, 10u);
  EXPECT_TRUE(fs::exists(Path("a.txt.manifest.json")));
  json manifest = json::parse(Slurp(Path("a.txt.manifest.json")));
  EXPECT_EQ(manifest["command"], "gen-db");
  EXPECT_EQ(manifest["seeds"]["seed"], 4);
}

TEST_F(CliTest, LocalMatchFindsPlantedSuspect) {
  MakeScenario();
  Outcome r = Cli({"match", "--db", Path("db.txt"), "--suspects", "1,3,5,7,9", "--crime",
                   Path("crime.txt"), "--tau", kTau, "--backend", "transparent",
                   "--out", Path("run")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto records = JsonLines(Path("run/match_report.jsonl"));
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0]["type"], "match");
  EXPECT_EQ(records[0]["matched"], json::array({3}));
  EXPECT_EQ(records[1]["type"], "lab");
  EXPECT_TRUE(records[1]["completed"].get<bool>());
  EXPECT_TRUE(fs::exists(Path("run/investigator.transcript")));
  EXPECT_TRUE(fs::exists(Path("run/lab.transcript")));
  EXPECT_TRUE(fs::exists(Path("run/manifest.json")));
  EXPECT_NE(r.out.find("matched suspects: 3"), std::string::npos) << r.out;

  // A zero threshold matches nothing, not even an exact copy.
  Outcome none = Cli({"match", "--db", Path("db.txt"), "--suspects", "1,3,5", "--crime",
                      Path("crime.txt"), "--tau", "0", "--backend", "transparent",
                      "--out", Path("run0")});
  ASSERT_EQ(none.code, 0) << none.err;
  EXPECT_EQ(JsonLines(Path("run0/match_report.jsonl"))[0]["matched"], json::array());
}

TEST_F(CliTest, MatchAgreesWithOracle) {
  RandomSource rng = RandomSource::FromSeed(3, "cli-scenarios");
  for (int k = 0; k < 5; ++k) {
    size_t crime_of = 1 + rng.UniformBelow(20);
    MakeScenario(100 + k, crime_of);
    std::vector<uint32_t> perm = RandomPermutation(20, rng);
    std::string suspects;
    for (int i = 0; i < 5; ++i) suspects += (i ? "," : "") + std::to_string(perm[i] + 1);
    std::string out = Path("m" + std::to_string(k));
    Outcome m = Cli({"match", "--db", Path("db.txt"), "--suspects", suspects, "--crime",
                     Path("crime.txt"), "--tau", kTau, "--backend", "transparent",
                     "--seed", std::to_string(k), "--out", out});
    ASSERT_EQ(m.code, 0) << m.err;
    Outcome o = Cli({"oracle", "--db", Path("db.txt"), "--suspects", suspects, "--crime",
                     Path("crime.txt"), "--tau", kTau, "--out", out + ".oracle.jsonl"});
    ASSERT_EQ(o.code, 0) << o.err;
    json expect = json::array();
    for (const auto& rec : JsonLines(out + ".oracle.jsonl")) {
      EXPECT_EQ(rec["type"], "oracle");
      if (rec["match"].get<bool>()) expect.push_back(rec["suspect"]);
    }
    EXPECT_EQ(JsonLines(out + "/match_report.jsonl")[0]["matched"], expect) << suspects;
  }
}

TEST_F(CliTest, ClientServerEqualsLocal) {
  MakeScenario();
  const std::string addr = "127.0.0.1:" + std::to_string(20000 + ::getpid() % 20000);
  const std::vector<std::string> common = {"--db", Path("db.txt"), "--suspects", "2,3,4",
                                           "--crime", Path("crime.txt"), "--tau", kTau,
                                           "--backend", "transparent", "--seed", "9"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"match"};
    args.insert(args.end(), common.begin(), common.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  Outcome server;
  std::thread t([&] {
    server = Cli(with({"--mode", "server", "--addr", addr, "--sessions", "1", "--out",
                       Path("server")}));
  });
  Outcome client = Cli(with({"--mode", "client", "--addr", addr, "--out", Path("client")}));
  t.join();
  ASSERT_EQ(client.code, 0) << client.err;
  ASSERT_EQ(server.code, 0) << server.err;
  Outcome local = Cli(with({"--out", Path("local")}));
  ASSERT_EQ(local.code, 0) << local.err;
  EXPECT_EQ(JsonLines(Path("client/match_report.jsonl"))[0]["matched"],
            JsonLines(Path("local/match_report.jsonl"))[0]["matched"]);
  EXPECT_TRUE(JsonLines(Path("server/lab_report.jsonl"))[0]["completed"].get<bool>());
}

TEST_F(CliTest, BenchEmitsSixStages) {
  Outcome b = Cli({"bench", "--grid", "2x4,2x8,2x16", "--backend", "transparent",
                   "--m", "2", "--reps", "1", "--out", Path("bench.jsonl")});
  ASSERT_EQ(b.code, 0) << b.err;
  auto rows = JsonLines(Path("bench.jsonl"));
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    EXPECT_EQ(row["type"], "bench");
    EXPECT_EQ(row["timings_ms"].size(), 6u);
    for (const auto& [k, v] : row["timings_ms"].items()) EXPECT_GE(v.get<double>(), 0) << k;
  }
  EXPECT_LT(rows[0]["timings_ms"]["ot_key_generation"].get<double>(),
            rows[2]["timings_ms"]["ot_key_generation"].get<double>());
  for (const char* col : {"ot_keygen", "ot_encrypt", "ot_extract", "crime_enc",
                          "similarity", "find_match"}) {
    EXPECT_NE(b.out.find(col), std::string::npos) << col;
  }
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli({}).code, 1);
  EXPECT_EQ(Cli({"--help"}).code, 0);
  EXPECT_EQ(Cli({"frobnicate"}).code, 1);
  EXPECT_EQ(Cli({"match", "--db", Path("nope.txt"), "--suspects", "1", "--crime",
                 Path("nope.txt"), "--tau", "1"}).code, 4);
  MakeScenario();
  EXPECT_EQ(Cli({"match", "--db", Path("db.txt"), "--suspects", "1", "--crime",
                 Path("crime.txt"), "--tau", "1", "--backend", "paillier"}).code, 1);
  EXPECT_EQ(Cli({"match", "--db", Path("db.txt"), "--suspects", "21", "--crime",
                 Path("crime.txt"), "--tau", "1", "--backend", "transparent"}).code, 1);
  EXPECT_EQ(Cli({"oracle", "--db", Path("db.txt"), "--suspects", "1,1", "--crime",
                 Path("crime.txt"), "--tau", "1"}).code, 1);

  EXPECT_EQ(ExitCodeFor(ErrorCode::kConfigMismatch), 5);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kIo), 4);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kOtAbort), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kVerificationFailure), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kProtocol), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kInvalidArgument), 1);
}

TEST(SuspectList, Parsing) {
  EXPECT_EQ(ParseSuspectList("3,1,7"), (std::vector<uint32_t>{1, 3, 7}));
  for (const char* bad : {"", "0", "1,1", "a", "1,,2", "-1"}) {
    EXPECT_THROW(ParseSuspectList(bad), Error) << bad;
  }
}

}  // namespace
}  // namespace blindmatch::cli
