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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "commands.h"
#include "blindmatch/blindenc.h"
#include "blindmatch/encrypted_profile.h"
#include "blindmatch/leak_scan.h"
#include "blindmatch/matching.h"
#include "blindmatch/ot.h"
#include "blindmatch/random.h"
#include "blindmatch/session.h"
#include "blindmatch/zkp.h"
#include "test_util.h"

#ifndef BLINDMATCH_GOLDEN_DIR
#define BLINDMATCH_GOLDEN_DIR "tests/golden"
#endif

namespace blindmatch {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

const FieldParams kF;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Verdict {
  std::ostringstream detail;
  std::vector<std::string> failures;
  void Require(bool ok, const std::string& why) {
    if (!ok) failures.push_back(why);
  }
};

int Cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "blindmatch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

std::vector<json> JsonLines(const fs::path& p) {
  std::vector<json> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::string Join(const std::vector<uint32_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// Coefficient of determination of the least-squares line through (x, y).
double RSquared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double TimeMedian(size_t reps, const std::function<void()>& f) {
  std::vector<double> t;
  for (size_t i = 0; i < reps; ++i) {
    auto start = Clock::now();
    f();
    t.push_back(Seconds(start) * 1e3);
  }
  return Median(t);
}

class Workdir {
 public:
  Workdir() {
    path_ = fs::temp_directory_path() / ("blindmatch-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Workdir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const std::string kTau10 = std::to_string(std::pow(10.0, 0.25) + 0.5);

struct CliScenario {
  std::string db, crime;
  std::vector<uint32_t> suspects;
};

CliScenario GenScenario(const Workdir& w, const std::string& tag, size_t n, uint64_t seed,
                        std::vector<uint32_t> suspects) {
  CliScenario s{w / (tag + ".db"), w / (tag + ".crime"), std::move(suspects)};
  int rc = Cli({"gen-db", "--t", "10", "--n", std::to_string(n), "--range", "8", "--seed",
                std::to_string(seed), "--out", s.db, "--crime-out", s.crime, "--crime-of",
                "3", "--max-delta", "1"});
  if (rc != 0) throw std::runtime_error("gen-db failed");
  return s;
}

std::vector<uint32_t> OracleSet(const CliScenario& s, const std::string& tau) {
  std::vector<uint32_t> out;
  for (const auto& e : cli::RunOracle(ReadDatabaseFile(s.db), s.suspects,
                                      ReadDatabaseFile(s.crime).at(1),
                                      std::stod(tau))) {
    if (e.match) out.push_back(e.suspect);
  }
  return out;
}

// Runs the match command; returns the investigator and lab records.
std::pair<json, json> MatchCli(const CliScenario& s, const std::string& backend,
                               const std::string& out_dir, uint64_t seed, double* seconds) {
  auto start = Clock::now();
  std::string text;
  int rc = Cli({"match", "--db", s.db, "--suspects", Join(s.suspects), "--crime", s.crime,
                "--tau", kTau10, "--backend", backend, "--seed", std::to_string(seed),
                "--out", out_dir},
               &text);
  *seconds = Seconds(start);
  if (rc != 0) throw std::runtime_error("match exited with " + std::to_string(rc) + ": " + text);
  auto records = JsonLines(fs::path(out_dir) / "match_report.jsonl");
  return {records.at(0), records.at(1)};
}

void Criterion1(Verdict& v, const Workdir& w) {
  CliScenario s = GenScenario(w, "c1", 20, 1, {1, 3, 5, 7, 9});
  double secs = 0;
  auto [inv, lab] = MatchCli(s, "transparent", w / "c1-run", 1, &secs);
  v.Require(inv["matched"] == json::array({3}), "headline match set " + inv["matched"].dump());
  v.Require(secs < 10, "headline runtime " + std::to_string(secs) + " s");
  double worst = secs;
  size_t agree = 0;
  RandomSource rng = RandomSource::FromSeed(1, "acceptance-c1");
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    // Suspect 3 plus four others.
    std::vector<uint32_t> perm = RandomPermutation(19, rng);
    std::vector<uint32_t> suspects = {3};
    for (size_t i = 0; i < 4; ++i) suspects.push_back(perm[i] < 2 ? perm[i] + 1 : perm[i] + 2);
    std::sort(suspects.begin(), suspects.end());
    CliScenario sc = GenScenario(w, "c1s" + std::to_string(seed), 20, seed * 7919, suspects);
    auto [r, l] = MatchCli(sc, "transparent", w / ("c1s-run" + std::to_string(seed)), seed, &secs);
    worst = std::max(worst, secs);
    std::vector<uint32_t> expect = OracleSet(sc, kTau10);
    if (r["matched"] == json(expect)) ++agree;
  }
  v.Require(agree == 20, std::to_string(agree) + "/20 scenarios agree with the oracle");
  v.Require(worst < 10, "slowest run " + std::to_string(worst) + " s");
  v.detail << "match set " << inv["matched"].dump() << ", oracle agreement " << agree
           << "/20, slowest run " << std::fixed << std::setprecision(2) << worst << " s";
}

void Criterion2(Verdict& v, const Workdir& w) {
  CliScenario s = GenScenario(w, "c2", 10, 2, {2, 3, 7});
  double secs = 0;
  auto [inv, lab] = MatchCli(s, "reference", w / "c2-run", 2, &secs);
  std::vector<uint32_t> expect = OracleSet(s, kTau10);
  v.Require(inv["matched"] == json(expect), "match set " + inv["matched"].dump() +
                                                " vs oracle " + json(expect).dump());
  v.Require(!inv["partial"].get<bool>() && !lab["partial"].get<bool>(),
            "a distance failed to decrypt");
  v.Require(lab["completed"].get<bool>(), "lab did not complete");
  v.Require(secs < 15 * 60, "runtime " + std::to_string(secs) + " s");
  v.detail << "match set " << inv["matched"].dump() << " = oracle, no decryption failures, "
           << std::fixed << std::setprecision(1) << secs << " s";
}

void Criterion3(Verdict& v) {
  const size_t omegas[] = {4, 16, 64};
  size_t failures = 0, runs = 0;
  for (HeBackend backend : {HeBackend::kTransparent, HeBackend::kBgv}) {
    auto ctx = HeContext::Create(HeParams::ForBackend(backend));
    RandomSource rng = RandomSource::FromSeed(3, "acceptance-c3");
    HeKeys keys = ctx->KeyGen(rng);
    for (size_t i = 0; i < 100; ++i) {
      FieldElement kappa = SampleUnit(kF, rng);
      auto [batch, secrets] = PrepareBatch(kappa, 0, omegas[i % 3], rng);
      auto resp = EncryptBatch(*ctx, batch, keys.secret_key, rng);
      HeCiphertext c = ExtractBlinded(*ctx, resp, secrets, keys.evaluation_key, rng);
      ++runs;
      try {
        if (!(ctx->Decrypt(c, keys.secret_key) == kappa)) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  v.Require(failures == 0, std::to_string(failures) + " wrong decryptions");
  v.detail << runs << " runs over both backends, " << failures << " failures";
}

void Criterion4(Verdict& v) {
  RandomSource rng = RandomSource::FromSeed(4, "acceptance-c4");
  double worst = 0;
  for (uint64_t k : {1ull, 2ull, 3ull, 32768ull, 65536ull}) {
    FieldElement kappa(k, kF);
    std::vector<uint64_t> samples;
    while (samples.size() < 100000) {
      auto [batch, secrets] = PrepareBatch(kappa, 0, 50, rng);
      for (const auto& x : batch.omega_list) samples.push_back(x.value());
    }
    double stat = testing::ChiSquareUniform(samples, 1, kF.modulus() - 1, 16);
    worst = std::max(worst, stat);
    v.Require(stat < testing::kChiSquare15Q999,
              "kappa " + std::to_string(k) + " statistic " + std::to_string(stat));
  }
  v.detail << "max statistic " << std::fixed << std::setprecision(2) << worst
           << " < " << testing::kChiSquare15Q999 << " over 5 kappas";
}

void Criterion5(Verdict& v) {
  auto group = Group::Create(GroupId::kP256);
  RandomSource rng = RandomSource::FromSeed(5, "acceptance-c5");
  size_t bad = 0, exceptions = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    size_t n = 1 + rng.UniformBelow(32);
    size_t m = 1 + rng.UniformBelow(n);
    std::vector<uint32_t> perm = RandomPermutation(n, rng);
    std::vector<uint32_t> suspects;
    for (size_t i = 0; i < m; ++i) suspects.push_back(perm[i] + 1);
    std::sort(suspects.begin(), suspects.end());
    Bytes sid(16);
    rng.Fill(sid);
    try {
      GroupElement anchor = DeriveAnchor(*group, sid);
      TransferKeySet keys = BuildTransferKeys(*group, suspects, n, anchor, rng);
      std::vector<Bytes> blobs(n);
      for (size_t i = 0; i < n; ++i) {
        blobs[i].resize(24);
        rng.Fill(blobs[i]);
      }
      auto sealed = SealAll(*group, blobs, keys.public_keys, sid, rng);
      std::map<uint32_t, Scalar> secrets;
      for (uint32_t s : suspects) secrets[s] = keys.witness.secrets[s - 1];
      auto opened = OpenSuspects(*group, sealed, suspects, secrets, sid);
      bool ok = opened.size() == m;
      for (uint32_t s : suspects) ok = ok && opened.count(s) && opened[s] == blobs[s - 1];
      for (size_t i = 0; i < n; ++i) {
        if (keys.witness.is_suspect[i]) continue;
        try {
          OpenSealed(*group, sealed[i], keys.witness.secrets[i], sid);
          ok = false;
        } catch (const Error& e) {
          ok = ok && e.code() == ErrorCode::kAuthenticationFailure;
        }
      }
      if (!ok) ++bad;
    } catch (const std::exception&) {
      ++exceptions;
    }
  }
  v.Require(bad == 0, std::to_string(bad) + " trials broke exclusivity");
  v.Require(exceptions == 0, std::to_string(exceptions) + " unexpected exceptions");
  v.detail << "1000 trials, " << bad << " exclusivity violations, " << exceptions
           << " exceptions";
}

void Criterion6(Verdict& v) {
  auto group = Group::Create(GroupId::kP256);
  RandomSource rng = RandomSource::FromSeed(6, "acceptance-c6");
  size_t proofs = 0, incomplete = 0, unsound = 0, rebound = 0, fuzzed = 0, fuzz_accepted = 0;
  for (size_t n = 1; n <= 32; ++n) {
    for (size_t m = 1; m <= n; ++m) {
      std::vector<uint32_t> perm = RandomPermutation(n, rng);
      std::vector<uint32_t> suspects(perm.begin(), perm.begin() + static_cast<long>(m));
      for (auto& s : suspects) ++s;
      std::sort(suspects.begin(), suspects.end());
      Bytes sid(16);
      rng.Fill(sid);
      GroupElement anchor = DeriveAnchor(*group, sid);
      TransferKeySet keys = BuildTransferKeys(*group, suspects, n, anchor, rng);
      Bytes proof = SerializeProof(*group, ProveKofN(*group, keys.public_keys, keys.witness, sid, rng));
      ++proofs;
      if (!VerifyKofN(*group, keys.public_keys, m, sid, proof)) ++incomplete;
      for (size_t other : {m - 1, m + 1, size_t{0}, n + 1}) {
        if (other != m && VerifyKofN(*group, keys.public_keys, other, sid, proof)) ++unsound;
      }
      Bytes sid2 = sid;
      sid2[rng.UniformBelow(sid2.size())] ^= 1;
      if (VerifyKofN(*group, keys.public_keys, m, sid2, proof)) ++rebound;
      // Mutation fuzz on one proof per n keeps the run short.
      if (m == 1 + (n - 1) / 2) {
        for (int k = 0; k < 100; ++k) {
          Bytes mutated = proof;
          size_t pos = rng.UniformBelow(mutated.size());
          mutated[pos] ^= static_cast<uint8_t>(1 + rng.UniformBelow(255));
          ++fuzzed;
          if (VerifyKofN(*group, keys.public_keys, m, sid, mutated)) ++fuzz_accepted;
        }
      }
    }
  }
  v.Require(incomplete == 0, std::to_string(incomplete) + " honest proofs rejected");
  v.Require(unsound == 0, std::to_string(unsound) + " wrong counts accepted");
  v.Require(fuzz_accepted == 0, std::to_string(fuzz_accepted) + " mutations accepted");
  v.Require(rebound == 0, std::to_string(rebound) + " proofs accepted under another sid");
  v.detail << proofs << " proofs (all n <= 32, 1 <= m <= n) accepted, " << unsound
           << " wrong counts accepted, " << fuzz_accepted << "/" << fuzzed
           << " mutations accepted, " << rebound << " rebindings accepted";
}

void Criterion7(Verdict& v) {
  size_t mismatches = 0, pairs = 0;
  for (HeBackend backend : {HeBackend::kTransparent, HeBackend::kBgv}) {
    auto ctx = HeContext::Create(HeParams::ForBackend(backend));
    RandomSource rng = RandomSource::FromSeed(7, "acceptance-c7");
    HeKeys keys = ctx->KeyGen(rng);
    for (int i = 0; i < 200; ++i) {
      size_t t = 1 + rng.UniformBelow(10);
      DnaProfile a = GenerateProfile(kF, t, kF.modulus() - 1, rng);
      DnaProfile b = GenerateProfile(kF, t, kF.modulus() - 1, rng);
      auto ea = EncryptProfile(*ctx, a, keys.public_key, rng);
      auto eb = EncryptProfile(*ctx, b, keys.public_key, rng);
      HeCiphertext d = EncryptedDistance(*ctx, ea, eb, keys.public_key, keys.evaluation_key, rng);
      ++pairs;
      try {
        if (!(ctx->Decrypt(d, keys.secret_key) == PlaintextDistance(a, b))) ++mismatches;
      } catch (const Error&) {
        ++mismatches;
      }
    }
  }
  v.Require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.detail << pairs << " pairs over both backends with full-range entries, " << mismatches
           << " mismatches";
}

void Criterion8(Verdict& v) {
  auto ctx = HeContext::Create(HeParams::Transparent());
  RandomSource rng = RandomSource::FromSeed(8, "acceptance-c8");
  HeKeys keys = ctx->KeyGen(rng);
  std::vector<double> x, y;
  for (size_t m : {2, 4, 8, 16}) {
    for (size_t t : {5, 10, 20}) {
      std::map<uint32_t, EncryptedProfile> suspects;
      for (uint32_t i = 1; i <= m; ++i) {
        suspects.emplace(i, EncryptProfile(*ctx, GenerateProfile(kF, t, 8, rng), keys.public_key, rng));
      }
      auto crime = EncryptProfile(*ctx, GenerateProfile(kF, t, 8, rng), keys.public_key, rng);
      x.push_back(static_cast<double>(m * t));
      y.push_back(TimeMedian(15, [&] {
        EncryptedDistances(*ctx, suspects, crime, keys.public_key, keys.evaluation_key, rng);
      }));
    }
  }
  double r2_distances = RSquared(x, y);

  auto group = Group::Create(GroupId::kP256);
  std::vector<double> xn, yn;
  for (size_t n : {8, 32, 128}) {
    Bytes sid(16, 8);
    TransferKeySet keys_n =
        BuildTransferKeys(*group, {1}, n, DeriveAnchor(*group, sid), rng);
    std::vector<Bytes> blobs;
    for (size_t i = 0; i < n; ++i) {
      blobs.push_back(SerializeEncryptedProfile(
          *ctx, EncryptProfileSymmetric(*ctx, GenerateProfile(kF, 10, 8, rng), keys.secret_key, rng)));
    }
    xn.push_back(static_cast<double>(n));
    yn.push_back(TimeMedian(5, [&] { SealAll(*group, blobs, keys_n.public_keys, sid, rng); }));
  }
  double r2_seal = RSquared(xn, yn);
  v.Require(r2_distances >= 0.9, "distances R^2 " + std::to_string(r2_distances));
  v.Require(r2_seal >= 0.9, "sealing R^2 " + std::to_string(r2_seal));
  v.detail << std::fixed << std::setprecision(4) << "distances vs m*t R^2 = " << r2_distances
           << ", sealing vs n R^2 = " << r2_seal << std::setprecision(2) << " (" << yn[0]
           << ", " << yn[1] << ", " << yn[2] << " ms)";
}

void Criterion9(Verdict& v) {
  const std::pair<size_t, size_t> grid[] = {{10, 10}, {50, 10}, {100, 10}, {10, 50}, {10, 100}};
  double fm_min = 1e300, fm_max = 0;
  std::map<size_t, double> keygen_by_n;
  std::ostringstream rows;
  for (auto [t, n] : grid) {
    cli::BenchPoint b = cli::RunBenchPoint(t, n, 5, HeBackend::kBgv, 16, 3, 9);
    fm_min = std::min(fm_min, b.mean.find_match);
    fm_max = std::max(fm_max, b.mean.find_match);
    if (t == 10) keygen_by_n[n] = b.mean.ot_key_generation;
    rows << " (" << t << "x" << n << ": keygen " << std::fixed << std::setprecision(1)
         << b.mean.ot_key_generation << " ms, find " << b.mean.find_match << " ms)";
  }
  double ratio = fm_max / fm_min;
  bool monotone = keygen_by_n[10] < keygen_by_n[50] && keygen_by_n[50] < keygen_by_n[100];
  v.Require(ratio < 3, "find-match spread " + std::to_string(ratio));
  v.Require(monotone, "key generation not increasing in n");
  v.detail << "find-match max/min " << std::fixed << std::setprecision(2) << ratio
           << ", keygen increasing in n:" << rows.str();
}

void Criterion10(Verdict& v) {
  size_t hits = 0, incomplete = 0, blob_errors = 0;
  RandomSource rng = RandomSource::FromSeed(10, "acceptance-c10");
  auto run = [&](uint64_t seed, const InvestigatorHooks& hooks, LeakReport* out) {
    std::vector<DnaProfile> entries;
    for (int i = 0; i < 20; ++i) entries.push_back(GenerateProfile(kF, 10, 8, rng));
    ProfileDatabase db(kF, 10, entries);
    std::vector<uint32_t> perm = RandomPermutation(20, rng);
    std::vector<uint32_t> suspects;
    for (int i = 0; i < 5; ++i) suspects.push_back(perm[i] + 1);
    std::sort(suspects.begin(), suspects.end());
    DnaProfile crime = Perturb(db.at(suspects[0]), 1, 8, rng);
    ProtocolConfig config;
    config.t = 10;
    config.tau = std::pow(10.0, 0.25) + 0.5;
    config.backend = HeBackend::kTransparent;
    auto lab = LabService::Create(db, config.backend, config.group, seed);
    LocalRun r = RunLocal(*lab, config, suspects, crime, seed + 1, hooks);
    if (!r.lab.completed) ++incomplete;
    LeakSecrets secrets;
    secrets.suspect_indices = suspects;
    for (const auto& e : Flatten(crime)) secrets.crime_entries.push_back(e.value());
    for (uint32_t s : suspects) {
      std::vector<uint64_t> vals;
      for (const auto& e : Flatten(db.at(s))) vals.push_back(e.value());
      secrets.suspect_entries.push_back(vals);
    }
    LeakReport a = TranscriptLeakScan(r.investigator.transcript, secrets);
    LeakReport b = TranscriptLeakScan(r.lab.transcript, secrets);
    a.hits.insert(a.hits.end(), b.hits.begin(), b.hits.end());
    *out = a;
  };
  for (uint64_t s = 0; s < 50; ++s) {
    LeakReport rep;
    run(1000 + 2 * s, {}, &rep);
    hits += rep.hits.size();
    if (rep.ot_blob_count != 20) ++blob_errors;
  }
  InvestigatorHooks broken;
  broken.leak_crime_profile = true;
  LeakReport rep;
  run(5000, broken, &rep);
  size_t fixture_hits = 0;
  for (const auto& h : rep.hits) fixture_hits += h.secret == "crime-profile";
  v.Require(hits == 0, std::to_string(hits) + " hits on honest sessions");
  v.Require(incomplete == 0, std::to_string(incomplete) + " sessions failed");
  v.Require(blob_errors == 0, "transfer phase did not carry all n blobs");
  v.Require(fixture_hits > 0, "broken fixture not detected");
  v.detail << "50 honest sessions: " << hits << " hits, all n blobs present; broken fixture: "
           << fixture_hits << " crime-profile hits";
}

void Criterion11(Verdict& v) {
  std::vector<DnaProfile> entries;
  RandomSource rng = RandomSource::FromSeed(11, "acceptance-c11");
  for (int i = 0; i < 6; ++i) entries.push_back(GenerateProfile(kF, 3, 8, rng));
  ProfileDatabase db(kF, 3, entries);
  DnaProfile crime = Perturb(db.at(2), 1, 8, rng);
  ProtocolConfig config;
  config.t = 3;
  config.omega = 4;
  config.tau = 2;
  config.backend = HeBackend::kTransparent;
  const std::vector<uint32_t> suspects = {2, 5};
  auto lab = LabService::Create(db, config.backend, config.group, 111);

  LocalRun a = RunLocal(*lab, config, suspects, crime, 112);
  LocalRun b = RunLocal(*lab, config, suspects, crime, 112);
  Bytes inv = a.investigator.transcript.Serialize(true);
  Bytes labt = a.lab.transcript.Serialize(true);
  v.Require(inv == b.investigator.transcript.Serialize(true) &&
                labt == b.lab.transcript.Serialize(true),
            "repeated runs differ");

  auto listener = TcpListener::Listen(ParseEndpoint("127.0.0.1:0"));
  LabReport tcp_lab;
  std::thread server([&] { ServeTcp(*lab, *listener, 1, [&](const LabReport& r) { tcp_lab = r; }); });
  auto conn = TcpConnect(Endpoint{"127.0.0.1", listener->port()});
  MatchResult tcp = RunInvestigator(config, suspects, crime, *conn, 112);
  server.join();
  v.Require(tcp.transcript.Serialize(true) == inv && tcp_lab.transcript.Serialize(true) == labt,
            "TCP transcripts differ from in-process");

  const fs::path dir = BLINDMATCH_GOLDEN_DIR;
  const char* update = std::getenv("BLINDMATCH_UPDATE_GOLDEN");
  for (const auto& [name, bytes] : {std::pair<std::string, Bytes>{"acceptance_investigator.pmtr", inv},
                                    std::pair<std::string, Bytes>{"acceptance_lab.pmtr", labt}}) {
    if (update && std::string(update) == "1") {
      std::ofstream out(dir / name, std::ios::binary);
      out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
      continue;
    }
    std::ifstream in(dir / name, std::ios::binary);
    Bytes golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    v.Require(golden == bytes, name + " differs from the golden copy");
  }
  v.detail << "golden transcripts (" << inv.size() << " + " << labt.size()
           << " bytes) reproduced by repeated, in-process and TCP runs";
}

}  // namespace
}  // namespace blindmatch

int main() {
  using namespace blindmatch;
  // Library warnings (range discipline etc.) are not part of the report.
  SetWarningHandler([](std::string_view) {});
  Workdir work;
  const std::pair<const char*, std::function<void(Verdict&)>> criteria[] = {
      {"end-to-end, transparent backend", [&](Verdict& v) { Criterion1(v, work); }},
      {"end-to-end, reference backend", [&](Verdict& v) { Criterion2(v, work); }},
      {"blind encryption recovers kappa", Criterion3},
      {"blinded values are uniform", Criterion4},
      {"transfer exclusivity", Criterion5},
      {"k-of-n proof suite", Criterion6},
      {"distance circuit equals plaintext distance", Criterion7},
      {"linear scaling of distances and sealing", Criterion8},
      {"benchmark trend shape", Criterion9},
      {"transcript leak scan", Criterion10},
      {"wire format stability", Criterion11},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v;
    auto start = Clock::now();
    try {
      check(v);
    } catch (const std::exception& e) {
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = v.failures.empty();
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << " " << std::setw(2) << index << " " << name
              << ": " << v.detail.str();
    for (const auto& f : v.failures) std::cout << " | " << f;
    std::cout << " [" << std::fixed << std::setprecision(1) << Seconds(start) << " s]"
              << std::endl;
  }
  std::cout << (11 - failed) << "/11 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
