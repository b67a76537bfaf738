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

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "blindmatch/blindenc.h"
#include "blindmatch/encrypted_profile.h"
#include "blindmatch/ot.h"
#include "blindmatch/random.h"
#include "blindmatch/zkp.h"

namespace blindmatch::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json TimingsJson(const PhaseTimings& t) {
  return {{"ot_key_generation", t.ot_key_generation},
          {"ot_profile_encryption", t.ot_profile_encryption},
          {"ot_extraction", t.ot_extraction},
          {"crime_encryption", t.crime_encryption},
          {"similarities", t.similarities},
          {"find_match", t.find_match}};
}

void PrintTimingHeader(std::ostream& out, bool with_grid) {
  if (with_grid) out << std::setw(6) << "t" << std::setw(6) << "n";
  out << std::setw(12) << "ot_keygen" << std::setw(12) << "ot_encrypt"
      << std::setw(12) << "ot_extract" << std::setw(12) << "crime_enc"
      << std::setw(12) << "similarity" << std::setw(12) << "find_match"
      << "\n";
}

void PrintTimingRow(std::ostream& out, const PhaseTimings& t) {
  out << std::fixed << std::setprecision(2) << std::setw(12)
      << t.ot_key_generation << std::setw(12) << t.ot_profile_encryption
      << std::setw(12) << t.ot_extraction << std::setw(12)
      << t.crime_encryption << std::setw(12) << t.similarities
      << std::setw(12) << t.find_match << "\n";
}

void WriteFile(const fs::path& path, std::span<const uint8_t> data) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(data.data()),
          static_cast<std::streamsize>(data.size()));
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

void WriteText(const fs::path& path, const std::string& text) {
  WriteFile(path, std::span<const uint8_t>(
                      reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
}

DnaProfile ReadCrimeProfile(const std::string& path) {
  ProfileDatabase one = ReadDatabaseFile(path);
  if (one.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "crime profile file must hold exactly one profile");
  }
  return one.at(1);
}

// Everything needed to rerun a command.
json Manifest(const std::string& command, const json& config, uint64_t seed,
              const std::vector<std::string>& outputs,
              const std::string& backend) {
  return {{"tool", "blindmatch"},
          {"command", command},
          {"config", config},
          {"seeds", {{"seed", seed}}},
          {"backend", backend},
          {"outputs", outputs}};
}

struct Options {
  // gen-db
  size_t t = 10, n = 10;
  uint64_t range = 8;
  uint64_t p = FieldParams::kDefaultModulus;
  std::string crime_out;
  uint32_t crime_of = 0;
  uint64_t max_delta = 1;
  // shared
  std::string db, suspects, crime, backend = "reference", group = "p256";
  std::string mode = "local", addr = "127.0.0.1:7461", out;
  double tau = 1.0;
  size_t omega = 16;
  uint64_t seed = 1;
  size_t reps = 1;
  size_t m = 5;
  size_t sessions = 1;
  size_t max_frame_mib = 64;
  std::string grid = "10x10,50x10,100x10,10x50,10x100";
};

int CmdGenDb(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw Error(ErrorCode::kInvalidArgument, "--out is required");
  FieldParams field(o.p);
  if (o.range < 1 || o.range >= o.p) {
    throw Error(ErrorCode::kInvalidArgument, "range bound must lie in [1, p-1]");
  }
  if (!RangeDisciplineHolds(o.t, o.range, o.p)) {
    Warn("t * (B - 1)^4 >= p: distances may wrap around modulo p");
  }
  RandomSource rng = RandomSource::FromSeed(o.seed, "blindmatch/gen-db");
  std::vector<DnaProfile> entries;
  for (size_t i = 0; i < o.n; ++i) {
    entries.push_back(GenerateProfile(field, o.t, o.range, rng));
  }
  ProfileDatabase db(field, o.t, std::move(entries));
  WriteDatabaseFile(o.out, db);
  std::vector<std::string> outputs = {o.out};
  if (!o.crime_out.empty()) {
    if (o.crime_of < 1 || o.crime_of > o.n) {
      throw Error(ErrorCode::kInvalidArgument, "--crime-of outside 1..n");
    }
    RandomSource crng = RandomSource::FromSeed(o.seed, "blindmatch/gen-crime");
    DnaProfile crime = Perturb(db.at(o.crime_of), o.max_delta, o.range, crng);
    WriteDatabaseFile(o.crime_out, ProfileDatabase(field, o.t, {crime}));
    outputs.push_back(o.crime_out);
  }
  json manifest = Manifest(
      "gen-db",
      {{"t", o.t}, {"n", o.n}, {"range", o.range}, {"p", o.p},
       {"crime_of", o.crime_of}, {"max_delta", o.max_delta}},
      o.seed, outputs, "none");
  WriteText(o.out + ".manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << o.n << " profiles (t=" << o.t << ") to " << o.out << "\n";
  return 0;
}

ProtocolConfig ConfigFrom(const Options& o, size_t t, uint64_t p, size_t n) {
  ProtocolConfig c;
  c.p = p;
  c.t = t;
  c.n = n;
  c.omega = o.omega;
  c.tau = o.tau;
  c.backend = ParseHeBackend(o.backend);
  c.group = ParseGroupId(o.group);
  c.max_frame = o.max_frame_mib << 20;
  return c;
}

json ConfigJson(const ProtocolConfig& c, const Options& o) {
  return {{"p", c.p},          {"t", c.t},
          {"n", c.n},          {"omega", c.omega},
          {"tau", c.tau},      {"backend", HeBackendName(c.backend)},
          {"group", GroupName(c.group)}, {"mode", o.mode},
          {"addr", o.addr},    {"suspects", o.suspects},
          {"max_frame", c.max_frame}};
}

json MatchJson(const MatchResult& r) {
  return {{"type", "match"},
          {"sid", ToHex(r.sid)},
          {"n", r.n},
          {"m", r.m},
          {"matched", r.matched_suspects},
          {"positions", r.positions},
          {"partial", r.partial},
          {"timings_ms", TimingsJson(r.timings)}};
}

json LabJson(const LabReport& r) {
  json deltas = json::array();
  for (const auto& d : r.outcome.deltas) deltas.push_back(d ? json(*d) : json());
  return {{"type", "lab"},
          {"sid", ToHex(r.sid)},
          {"completed", r.completed},
          {"ot_aborted", r.ot_aborted},
          {"error", r.error},
          {"m", r.m},
          {"positions", r.outcome.positions},
          {"partial", r.outcome.partial},
          {"deltas", deltas},
          {"timings_ms", TimingsJson(r.timings)}};
}

void PrintMatch(std::ostream& out, const MatchResult& r,
                const PhaseTimings& timings) {
  out << "matched suspects:";
  if (r.matched_suspects.empty()) out << " (none)";
  for (uint32_t s : r.matched_suspects) out << " " << s;
  if (r.partial) out << "  [partial: some distances failed to decrypt]";
  out << "\n";
  PrintTimingHeader(out, false);
  PrintTimingRow(out, timings);
}

int LabFailureCode(const LabReport& r) {
  if (r.completed) return 0;
  if (r.ot_aborted) return 3;
  if (r.error.find("configuration") != std::string::npos) return 5;
  return 2;
}

int CmdMatch(const Options& o, std::ostream& out) {
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  if (o.mode == "local" || o.mode == "server") {
    if (o.db.empty()) throw Error(ErrorCode::kInvalidArgument, "--db is required");
  }
  if (o.mode == "local" || o.mode == "client") {
    if (o.crime.empty() || o.suspects.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--crime and --suspects are required");
    }
  }

  if (o.mode == "local") {
    ProfileDatabase db = ReadDatabaseFile(o.db);
    DnaProfile crime = ReadCrimeProfile(o.crime);
    auto suspects = ParseSuspectList(o.suspects);
    ProtocolConfig config =
        ConfigFrom(o, db.slot_count(), db.field().modulus(), db.size());
    auto lab = LabService::Create(db, config.backend, config.group, o.seed,
                                  config.max_frame);
    LocalRun run = RunLocal(*lab, config, suspects, crime, o.seed);
    EnsureDir(dir);
    WriteFile(dir / "investigator.transcript",
              run.investigator.transcript.Serialize());
    WriteFile(dir / "lab.transcript", run.lab.transcript.Serialize());
    WriteText(dir / "match_report.jsonl", MatchJson(run.investigator).dump() +
                                              "\n" + LabJson(run.lab).dump() +
                                              "\n");
    WriteText(dir / "manifest.json",
              Manifest("match", ConfigJson(config, o), o.seed,
                       {(dir / "match_report.jsonl").string(),
                        (dir / "investigator.transcript").string(),
                        (dir / "lab.transcript").string()},
                       HeBackendName(config.backend))
                      .dump(2) +
                  "\n");
    PhaseTimings timings = run.investigator.timings;
    timings += run.lab.timings;
    PrintMatch(out, run.investigator, timings);
    return 0;
  }

  if (o.mode == "client") {
    DnaProfile crime = ReadCrimeProfile(o.crime);
    auto suspects = ParseSuspectList(o.suspects);
    ProtocolConfig config = ConfigFrom(o, crime.slot_count(), crime.modulus(), 0);
    auto transport = TcpConnect(ParseEndpoint(o.addr));
    MatchResult r = RunInvestigator(config, suspects, crime, *transport, o.seed);
    EnsureDir(dir);
    WriteFile(dir / "investigator.transcript", r.transcript.Serialize());
    WriteText(dir / "match_report.jsonl", MatchJson(r).dump() + "\n");
    WriteText(dir / "manifest.json",
              Manifest("match", ConfigJson(config, o), o.seed,
                       {(dir / "match_report.jsonl").string(),
                        (dir / "investigator.transcript").string()},
                       HeBackendName(config.backend))
                      .dump(2) +
                  "\n");
    PrintMatch(out, r, r.timings);
    return 0;
  }

  if (o.mode == "server") {
    ProfileDatabase db = ReadDatabaseFile(o.db);
    ProtocolConfig config =
        ConfigFrom(o, db.slot_count(), db.field().modulus(), db.size());
    auto lab = LabService::Create(db, config.backend, config.group, o.seed,
                                  config.max_frame);
    auto listener = TcpListener::Listen(ParseEndpoint(o.addr));
    out << "listening on port " << listener->port() << "\n" << std::flush;
    EnsureDir(dir);
    std::ofstream reports(dir / "lab_report.jsonl");
    int code = 0;
    size_t k = 0;
    ServeTcp(*lab, *listener, o.sessions, [&](const LabReport& r) {
      WriteFile(dir / ("lab-" + std::to_string(k++) + ".transcript"),
                r.transcript.Serialize());
      reports << LabJson(r).dump() << "\n";
      out << "session " << ToHex(r.sid) << ": "
          << (r.completed ? "completed" : "failed: " + r.error) << "\n";
      if (code == 0) code = LabFailureCode(r);
    });
    WriteText(dir / "manifest.json",
              Manifest("match", ConfigJson(config, o), o.seed,
                       {(dir / "lab_report.jsonl").string()},
                       HeBackendName(config.backend))
                      .dump(2) +
                  "\n");
    return code;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "--mode must be local, client or server");
}

int CmdOracle(const Options& o, std::ostream& out) {
  if (o.db.empty() || o.crime.empty() || o.suspects.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "--db, --crime and --suspects are required");
  }
  ProfileDatabase db = ReadDatabaseFile(o.db);
  DnaProfile crime = ReadCrimeProfile(o.crime);
  auto entries = RunOracle(db, ParseSuspectList(o.suspects), crime, o.tau);
  std::ostringstream jsonl;
  out << std::setw(8) << "suspect" << std::setw(12) << "delta" << std::setw(12)
      << "root4" << std::setw(8) << "match" << "\n";
  std::vector<uint32_t> matched;
  for (const auto& e : entries) {
    out << std::setw(8) << e.suspect << std::setw(12) << e.delta << std::setw(12)
        << std::fixed << std::setprecision(4) << e.root << std::setw(8)
        << (e.match ? "yes" : "no") << "\n";
    jsonl << json{{"type", "oracle"}, {"suspect", e.suspect}, {"delta", e.delta},
                  {"root", e.root}, {"match", e.match}}
                 .dump()
          << "\n";
    if (e.match) matched.push_back(e.suspect);
  }
  out << "matched suspects:";
  if (matched.empty()) out << " (none)";
  for (uint32_t s : matched) out << " " << s;
  out << "\n";
  if (!o.out.empty()) WriteText(o.out, jsonl.str());
  return 0;
}

std::vector<std::pair<size_t, size_t>> ParseGrid(const std::string& text) {
  std::vector<std::pair<size_t, size_t>> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument("");
      grid.emplace_back(std::stoul(item.substr(0, x)), std::stoul(item.substr(x + 1)));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid entries look like <t>x<n>, got '" + item + "'");
    }
  }
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty --grid");
  return grid;
}

int CmdBench(const Options& o, std::ostream& out) {
  HeBackend backend = ParseHeBackend(o.backend);
  std::ostringstream jsonl;
  PrintTimingHeader(out, true);
  for (auto [t, n] : ParseGrid(o.grid)) {
    BenchPoint b = RunBenchPoint(t, n, std::min(o.m, n), backend, o.omega,
                                 o.reps, o.seed);
    out << std::setw(6) << t << std::setw(6) << n;
    PrintTimingRow(out, b.mean);
    jsonl << json{{"type", "bench"}, {"t", t}, {"n", n}, {"m", b.m},
                  {"backend", HeBackendName(backend)}, {"reps", o.reps},
                  {"timings_ms", TimingsJson(b.mean)}}
                 .dump()
          << "\n";
  }
  if (!o.out.empty()) WriteText(o.out, jsonl.str());
  return 0;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigMismatch:
    case ErrorCode::kParameterMismatch:
      return 5;
    case ErrorCode::kIo:
      return 4;
    case ErrorCode::kVerificationFailure:
    case ErrorCode::kOtAbort:
    case ErrorCode::kAuthenticationFailure:
      return 3;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kShape:
      return 1;
    default:
      return 2;
  }
}

std::vector<uint32_t> ParseSuspectList(const std::string& text) {
  std::vector<uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0 || v > UINT32_MAX) {
        throw std::invalid_argument("");
      }
      out.push_back(static_cast<uint32_t>(v));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "suspects must be positive integers, got '" + item + "'");
    }
  }
  std::sort(out.begin(), out.end());
  if (out.empty() || std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "suspect list must be non-empty and free of repeats");
  }
  return out;
}

std::vector<OracleEntry> RunOracle(const ProfileDatabase& db,
                                   const std::vector<uint32_t>& suspects,
                                   const DnaProfile& crime, double tau) {
  MatchThreshold threshold(tau);
  std::vector<OracleEntry> out;
  for (uint32_t s : suspects) {
    FieldElement delta = PlaintextDistance(db.at(s), crime);
    out.push_back({s, delta.value(), FourthRoot(delta.value()),
                   MatchDecision(delta, threshold)});
  }
  return out;
}

BenchPoint RunBenchPoint(size_t t, size_t n, size_t m, HeBackend backend,
                         size_t omega, size_t reps, uint64_t seed) {
  if (m == 0 || m > n || reps == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bench needs 1 <= m <= n and reps >= 1");
  }
  FieldParams field;
  RandomSource rng = RandomSource::FromSeed(seed, "blindmatch/bench");
  std::vector<DnaProfile> entries;
  for (size_t i = 0; i < n; ++i) entries.push_back(GenerateProfile(field, t, 8, rng));
  DnaProfile crime = Perturb(entries[0], 1, 8, rng);
  auto order = RandomPermutation(n, rng);
  std::vector<uint32_t> suspects;
  for (size_t i = 0; i < m; ++i) suspects.push_back(order[i] + 1);
  std::sort(suspects.begin(), suspects.end());

  auto ctx = HeContext::Create(HeParams::ForBackend(backend, field.modulus()));
  HeKeys keys = ctx->KeyGen(rng);
  GroupPtr group = Group::Create(GroupId::kP256);
  std::vector<Bytes> blobs;
  for (const auto& d : entries) {
    blobs.push_back(SerializeEncryptedProfile(
        *ctx, EncryptProfileSymmetric(*ctx, d, keys.secret_key, rng)));
  }

  BenchPoint point{t, n, m, {}};
  for (size_t rep = 0; rep < reps; ++rep) {
    PhaseTimings pt;
    std::array<uint8_t, 16> sid;
    rng.Fill(sid);

    auto start = Clock::now();
    GroupElement anchor = DeriveAnchor(*group, sid);
    TransferKeySet ks = BuildTransferKeys(*group, suspects, n, anchor, rng);
    Bytes proof = SerializeProof(
        *group, ProveKofN(*group, ks.public_keys, ks.witness, sid, rng));
    pt.ot_key_generation = MsSince(start);

    start = Clock::now();
    if (!VerifyKofN(*group, ks.public_keys, m, sid, proof)) {
      throw Error(ErrorCode::kVerificationFailure, "bench proof rejected");
    }
    auto sealed = SealAll(*group, blobs, ks.public_keys, sid, rng);
    pt.ot_profile_encryption = MsSince(start);

    start = Clock::now();
    std::map<uint32_t, Scalar> secrets;
    for (uint32_t s : suspects) secrets[s] = ks.witness.secrets[s - 1];
    std::map<uint32_t, EncryptedProfile> opened;
    for (auto& [index, blob] : OpenSuspects(*group, sealed, suspects, secrets, sid)) {
      opened.emplace(index, DeserializeEncryptedProfile(*ctx, blob, t));
    }
    pt.ot_extraction = MsSince(start);

    // Slot by slot so that only one batch of ciphertexts is alive at a time.
    start = Clock::now();
    std::vector<HeCiphertext> crime_entries;
    auto flat = Flatten(crime);
    for (size_t j = 0; j < flat.size(); ++j) {
      auto [batch, bs] =
          PrepareBatch(flat[j], static_cast<uint16_t>(j), omega, rng);
      auto response = EncryptBatch(*ctx, batch, keys.secret_key, rng);
      crime_entries.push_back(
          ExtractBlinded(*ctx, response, bs, keys.evaluation_key, rng));
    }
    EncryptedProfile crime_ct(std::move(crime_entries));
    pt.crime_encryption = MsSince(start);

    start = Clock::now();
    DistanceVector dv = EncryptedDistances(*ctx, opened, crime_ct,
                                           keys.public_key,
                                           keys.evaluation_key, rng);
    pt.similarities = MsSince(start);

    start = Clock::now();
    ThresholdMatch(*ctx, dv.distances, MatchThreshold(3.0), keys.secret_key);
    pt.find_match = MsSince(start);
    point.mean += pt;
  }
  const double k = 1.0 / static_cast<double>(reps);
  for (double* v : {&point.mean.ot_key_generation,
                    &point.mean.ot_profile_encryption,
                    &point.mean.ot_extraction, &point.mean.crime_encryption,
                    &point.mean.similarities, &point.mean.find_match}) {
    *v *= k;
  }
  return point;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Private DNA matching between an investigator and a lab"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen-db", "Generate a synthetic profile database");
  gen->add_option("--t", o.t, "Slots per profile")->check(CLI::Range(1, 65535));
  gen->add_option("--n", o.n, "Number of profiles")->check(CLI::Range(1, 1 << 20));
  gen->add_option("--range", o.range, "Entries are uniform in [1, range]");
  gen->add_option("--p", o.p, "Prime field modulus");
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->add_option("--out", o.out, "Database file to write")->required();
  gen->add_option("--crime-out", o.crime_out,
                  "Also write a crime-scene profile derived from --crime-of");
  gen->add_option("--crime-of", o.crime_of, "1-based source profile");
  gen->add_option("--max-delta", o.max_delta, "Perturbation of the crime profile");

  auto add_common = [&](CLI::App* c) {
    c->add_option("--db", o.db, "Profile database file");
    c->add_option("--suspects", o.suspects, "Comma-separated 1-based indices");
    c->add_option("--crime", o.crime, "Crime-scene profile file");
    c->add_option("--tau", o.tau, "Match threshold on the fourth root");
  };

  auto* match = app.add_subcommand("match", "Run the private matching protocol");
  add_common(match);
  match->add_option("--omega", o.omega, "Blinded values per entry")
      ->check(CLI::Range(2, 65535));
  match->add_option("--backend", o.backend, "transparent | reference");
  match->add_option("--group", o.group, "p256 | schnorr256");
  match->add_option("--mode", o.mode, "local | client | server");
  match->add_option("--addr", o.addr, "host:port for client and server modes");
  match->add_option("--seed", o.seed, "RNG seed");
  match->add_option("--out", o.out, "Output directory");
  match->add_option("--sessions", o.sessions,
                    "Server: sessions to serve before exiting (0 = forever)");
  match->add_option("--max-frame-mib", o.max_frame_mib, "Frame size limit");

  auto* oracle = app.add_subcommand("oracle", "Plaintext ground-truth matcher");
  add_common(oracle);
  oracle->add_option("--out", o.out, "JSON lines output file");

  auto* bench = app.add_subcommand("bench", "Time the protocol stages");
  bench->add_option("--grid", o.grid, "Comma-separated <t>x<n> points");
  bench->add_option("--backend", o.backend, "transparent | reference");
  bench->add_option("--reps", o.reps, "Repetitions per point")
      ->check(CLI::Range(1, 100000));
  bench->add_option("--m", o.m, "Suspects per point");
  bench->add_option("--omega", o.omega, "Blinded values per entry")
      ->check(CLI::Range(2, 65535));
  bench->add_option("--seed", o.seed, "RNG seed");
  bench->add_option("--out", o.out, "JSON lines output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*gen) return CmdGenDb(o, out);
    if (*match) return CmdMatch(o, out);
    if (*oracle) return CmdOracle(o, out);
    if (*bench) return CmdBench(o, out);
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace blindmatch::cli
