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

#include "blindmatch/session.h"

#include <chrono>
#include <cstring>
#include <map>
#include <mutex>
#include <thread>

#include "blindmatch/blindenc.h"
#include "blindmatch/encrypted_profile.h"
#include "blindmatch/error.h"
#include "blindmatch/ot.h"
#include "blindmatch/zkp.h"

namespace blindmatch {

namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Bytes ErrorPayload(ErrorCode code, const std::string& message) {
  ByteWriter w;
  w.U16(static_cast<uint16_t>(code));
  w.Blob(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(message.data()), message.size()));
  return w.Take();
}

[[noreturn]] void ThrowPeerError(std::span<const uint8_t> payload) {
  ErrorCode code = ErrorCode::kProtocol;
  std::string message = "malformed error frame";
  try {
    ByteReader r(payload);
    uint16_t raw = r.U16();
    if (raw <= static_cast<uint16_t>(ErrorCode::kTransportClosed)) {
      code = static_cast<ErrorCode>(raw);
    }
    auto text = r.Blob(4096);
    message.assign(text.begin(), text.end());
  } catch (const Error&) {
  }
  throw Error(code, "peer reported: " + message);
}

// Receives the next frame and insists on `expected`. An Error frame from the
// peer is rethrown with the peer's code.
Frame Expect(Channel& channel, MessageType expected) {
  Frame f = channel.Receive();
  if (f.type == MessageType::kError) ThrowPeerError(f.payload);
  if (f.type != expected) {
    throw Error(ErrorCode::kProtocol,
                std::string("expected ") + MessageTypeName(expected) +
                    ", received " + MessageTypeName(f.type));
  }
  return f;
}

struct Hello {
  GroupId group;
  HeBackend backend;
  uint64_t p;
  uint16_t t;
  uint32_t n;
  uint16_t omega;
  SessionId sid;
};

Bytes EncodeHello(const Hello& h) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(h.group));
  w.U8(static_cast<uint8_t>(h.backend));
  w.U64(h.p);
  w.U16(h.t);
  w.U32(h.n);
  w.U16(h.omega);
  w.Raw(h.sid);
  return w.Take();
}

Hello DecodeHello(std::span<const uint8_t> data) {
  ByteReader r(data);
  Hello h;
  h.group = static_cast<GroupId>(r.U8());
  h.backend = static_cast<HeBackend>(r.U8());
  h.p = r.U64();
  h.t = r.U16();
  h.n = r.U32();
  h.omega = r.U16();
  auto sid = r.Raw(h.sid.size());
  std::copy(sid.begin(), sid.end(), h.sid.begin());
  r.ExpectEnd();
  return h;
}

// Runs `body`, reporting failures to the peer and tagging them with the
// phase that was active.
class PhaseGuard {
 public:
  explicit PhaseGuard(Channel& channel) : channel_(channel) {}
  void Enter(const char* phase) { phase_ = phase; }
  const char* phase() const { return phase_; }

  [[noreturn]] void Fail(const Error& e, bool notify_peer) {
    if (notify_peer) {
      try {
        channel_.Send(MessageType::kError, ErrorPayload(e.code(), e.what()));
      } catch (const std::exception&) {
      }
    }
    channel_.Close();
    throw Error(e.code(), std::string(phase_) + ": " + e.what());
  }

 private:
  Channel& channel_;
  const char* phase_ = "hello";
};

bool IsPeerReported(const Error& e) {
  return std::strncmp(e.what(), "peer reported: ", 15) == 0 ||
         e.code() == ErrorCode::kOtAbort ||
         e.code() == ErrorCode::kTransportClosed;
}

}  // namespace

PhaseTimings& PhaseTimings::operator+=(const PhaseTimings& o) {
  ot_key_generation += o.ot_key_generation;
  ot_profile_encryption += o.ot_profile_encryption;
  ot_extraction += o.ot_extraction;
  crime_encryption += o.crime_encryption;
  similarities += o.similarities;
  find_match += o.find_match;
  return *this;
}

MatchResult RunInvestigator(const ProtocolConfig& config,
                            const std::vector<uint32_t>& suspects,
                            const DnaProfile& crime, Transport& transport,
                            uint64_t seed, const InvestigatorHooks& hooks) {
  MatchResult result;
  Channel channel(transport, result.transcript, config.max_frame);
  PhaseGuard guard(channel);
  RandomSource rng = RandomSource::FromSeed(seed, "blindmatch/investigator");
  try {
    if (crime.slot_count() != config.t || crime.modulus() != config.p) {
      throw Error(ErrorCode::kConfigMismatch,
                  "crime profile does not match the configured t and p");
    }
    if (suspects.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "suspect set is empty");
    }
    rng.Fill(result.sid);
    const auto& sid = result.sid;

    // Hello.
    channel.Send(MessageType::kHello,
                 EncodeHello({config.group, config.backend, config.p,
                              static_cast<uint16_t>(config.t),
                              static_cast<uint32_t>(config.n),
                              static_cast<uint16_t>(config.omega), sid}));
    Frame ack = Expect(channel, MessageType::kHelloAck);
    ByteReader ar(ack.payload);
    const uint64_t p = ar.U64();
    const size_t t = ar.U16();
    const size_t n = ar.U32();
    HeParams params = HeParams::Decode(ar.Blob());
    auto pk_bytes = ar.Blob();
    auto ek_bytes = ar.Blob();
    ar.ExpectEnd();
    if (p != config.p || t != config.t || params.backend != config.backend ||
        params.plaintext_modulus != p || (config.n != 0 && n != config.n)) {
      throw Error(ErrorCode::kConfigMismatch,
                  "Lab parameters differ from the local configuration");
    }
    HeContextPtr ctx = HeContext::Create(params);
    HePublicKey pk = ctx->DeserializePublicKey(pk_bytes);
    HeEvaluationKey ek = ctx->DeserializeEvaluationKey(ek_bytes);
    GroupPtr group = Group::Create(config.group);
    result.n = n;
    result.m = suspects.size();

    // Oblivious transfer of the suspects' encrypted profiles.
    guard.Enter("ot");
    auto start = Clock::now();
    GroupElement anchor = DeriveAnchor(*group, sid);
    TransferKeySet keys = BuildTransferKeys(*group, suspects, n, anchor, rng);
    Bytes proof = SerializeProof(
        *group, ProveKofN(*group, keys.public_keys, keys.witness, sid, rng));
    if (hooks.tamper_proof) proof[proof.size() / 2] ^= 0x01;
    ByteWriter req;
    req.U32(static_cast<uint32_t>(n));
    req.U32(static_cast<uint32_t>(suspects.size()));
    for (const auto& k : keys.public_keys) req.Blob(k.bytes);
    req.Blob(proof);
    result.timings.ot_key_generation = MsSince(start);
    channel.Send(MessageType::kOtRequest, req.bytes());

    Frame blobs = channel.Receive();
    if (blobs.type == MessageType::kError) ThrowPeerError(blobs.payload);
    if (blobs.type == MessageType::kOtAbort) {
      if (!blobs.payload.empty()) {
        throw Error(ErrorCode::kProtocol, "OtAbort carries a payload");
      }
      throw Error(ErrorCode::kOtAbort, "Lab rejected the key-set proof");
    }
    if (blobs.type != MessageType::kOtBlobs) {
      throw Error(ErrorCode::kProtocol,
                  std::string("expected OtBlobs, received ") +
                      MessageTypeName(blobs.type));
    }
    start = Clock::now();
    ByteReader br(blobs.payload);
    if (br.U32() != n) {
      throw Error(ErrorCode::kProtocolDesync, "OtBlobs count differs from n");
    }
    std::vector<SealedProfile> sealed;
    for (size_t i = 0; i < n; ++i) sealed.push_back(ReadSealedProfile(*group, br));
    br.ExpectEnd();
    std::map<uint32_t, Scalar> secrets;
    for (uint32_t s : suspects) secrets[s] = keys.witness.secrets[s - 1];
    std::map<uint32_t, EncryptedProfile> suspect_profiles;
    for (auto& [index, blob] :
         OpenSuspects(*group, sealed, suspects, secrets, sid)) {
      suspect_profiles.emplace(index,
                               DeserializeEncryptedProfile(*ctx, blob, t));
    }
    result.timings.ot_extraction = MsSince(start);

    // Blinded encryption of the crime-scene profile.
    guard.Enter("blind-encryption");
    start = Clock::now();
    ProfileBlinding blinding = PrepareProfile(crime, config.omega, rng);
    if (hooks.leak_crime_profile) {
      auto flat = Flatten(crime);
      for (auto& batch : blinding.batches) {
        for (size_t k = 0; k < batch.omega_list.size(); ++k) {
          batch.omega_list[k] = flat[k % flat.size()];
        }
      }
    }
    channel.Send(MessageType::kBlindRequest,
                 SerializeBlindRequest(blinding.batches));
    Frame blind = Expect(channel, MessageType::kBlindResponse);
    auto responses = ParseBlindResponse(*ctx, blind.payload);
    EncryptedProfile crime_ct = ExtractProfile(*ctx, responses, blinding, ek, rng);
    result.timings.crime_encryption = MsSince(start);

    // Encrypted distances, computed locally.
    guard.Enter("similarities");
    start = Clock::now();
    DistanceVector dv =
        EncryptedDistances(*ctx, suspect_profiles, crime_ct, pk, ek, rng);
    result.timings.similarities = MsSince(start);

    // Threshold decision by the Lab.
    guard.Enter("matching");
    channel.Send(MessageType::kMatchRequest,
                 SerializeMatchRequest(*ctx, dv.distances, config.tau));
    Frame resp = Expect(channel, MessageType::kMatchResponse);
    ThresholdOutcome outcome = ParseMatchResponse(resp.payload, dv.distances.size());
    result.positions = outcome.positions;
    result.partial = outcome.partial;
    result.matched_suspects = Resolve(outcome.positions, dv.position_to_suspect);
    channel.Close();
  } catch (const Error& e) {
    guard.Fail(e, !IsPeerReported(e));
  }
  return result;
}

std::shared_ptr<const LabService> LabService::Create(const ProfileDatabase& db,
                                                     HeBackend backend,
                                                     GroupId group,
                                                     uint64_t seed,
                                                     size_t max_frame) {
  std::shared_ptr<LabService> lab(new LabService(db));
  lab->seed_ = seed;
  lab->max_frame_ = max_frame;
  lab->group_ = Group::Create(group);
  lab->ctx_ = HeContext::Create(HeParams::ForBackend(backend, db.field().modulus()));
  RandomSource rng = RandomSource::FromSeed(seed, "blindmatch/lab-keys");
  lab->keys_ = lab->ctx_->KeyGen(rng);
  for (const DnaProfile& d : db.entries()) {
    lab->encrypted_blobs_.push_back(SerializeEncryptedProfile(
        *lab->ctx_,
        EncryptProfileSymmetric(*lab->ctx_, d, lab->keys_.secret_key, rng)));
  }
  return lab;
}

LabReport LabService::Serve(Transport& transport) const {
  LabReport report;
  Channel channel(transport, report.transcript, max_frame_);
  PhaseGuard guard(channel);
  const size_t n = db_.size();
  const size_t t = db_.slot_count();
  try {
    Frame hello_frame = Expect(channel, MessageType::kHello);
    Hello hello = DecodeHello(hello_frame.payload);
    report.sid = hello.sid;
    if (hello.group != group_->id() || hello.backend != ctx_->params().backend ||
        hello.p != db_.field().modulus() || hello.t != t ||
        (hello.n != 0 && hello.n != n)) {
      throw Error(ErrorCode::kConfigMismatch,
                  "session configuration differs from the Lab's database");
    }
    ByteWriter seed_material;
    seed_material.Raw(std::string_view("blindmatch/lab-session"));
    seed_material.U64(seed_);
    seed_material.Raw(hello.sid);
    RandomSource rng = RandomSource::FromBytes(seed_material.bytes());

    ByteWriter ack;
    ack.U64(db_.field().modulus());
    ack.U16(static_cast<uint16_t>(t));
    ack.U32(static_cast<uint32_t>(n));
    ack.Blob(ctx_->params().Encode());
    ack.Blob(ctx_->SerializePublicKey(keys_.public_key));
    ack.Blob(ctx_->SerializeEvaluationKey(keys_.evaluation_key));
    channel.Send(MessageType::kHelloAck, ack.bytes());

    guard.Enter("ot");
    Frame ot = Expect(channel, MessageType::kOtRequest);
    auto start = Clock::now();
    ByteReader r(ot.payload);
    if (r.U32() != n) {
      throw Error(ErrorCode::kProtocolDesync, "OtRequest key count differs from n");
    }
    const size_t m = r.U32();
    std::vector<GroupElement> keys;
    bool keys_valid = true;
    for (size_t i = 0; i < n; ++i) {
      auto raw = r.Blob(group_->element_size());
      auto k = group_->Decode(raw);
      if (!k) keys_valid = false;
      keys.push_back(k ? *k : GroupElement{});
    }
    auto proof = r.Blob();
    r.ExpectEnd();
    if (!keys_valid || m == 0 || m > n ||
        !VerifyKofN(*group_, keys, m, hello.sid, proof)) {
      report.ot_aborted = true;
      report.timings.ot_profile_encryption = MsSince(start);
      channel.Send(MessageType::kOtAbort, {});
      report.error = "ot: key-set proof rejected";
      channel.Close();
      return report;
    }
    report.m = m;
    auto sealed = SealAll(*group_, encrypted_blobs_, keys, hello.sid, rng);
    ByteWriter blobs;
    blobs.U32(static_cast<uint32_t>(n));
    for (const auto& s : sealed) WriteSealedProfile(s, blobs);
    report.timings.ot_profile_encryption = MsSince(start);
    channel.Send(MessageType::kOtBlobs, blobs.bytes());

    guard.Enter("blind-encryption");
    Frame blind = Expect(channel, MessageType::kBlindRequest);
    start = Clock::now();
    auto batches = ParseBlindRequest(blind.payload, db_.field(), 2 * t);
    std::vector<EncryptedBatchResponse> responses;
    for (const auto& b : batches) {
      responses.push_back(EncryptBatch(*ctx_, b, keys_.secret_key, rng));
    }
    Bytes response_bytes = SerializeBlindResponse(*ctx_, responses);
    report.timings.crime_encryption = MsSince(start);
    channel.Send(MessageType::kBlindResponse, response_bytes);

    guard.Enter("matching");
    Frame match = Expect(channel, MessageType::kMatchRequest);
    start = Clock::now();
    auto [distances, tau] = ParseMatchRequest(*ctx_, match.payload);
    if (distances.size() != m) {
      throw Error(ErrorCode::kProtocolDesync,
                  "MatchRequest carries " + std::to_string(distances.size()) +
                      " distances, expected " + std::to_string(m));
    }
    report.outcome = ThresholdMatch(*ctx_, distances, tau, keys_.secret_key);
    report.timings.find_match = MsSince(start);
    channel.Send(MessageType::kMatchResponse,
                 SerializeMatchResponse(report.outcome));
    report.completed = true;
    channel.Close();
  } catch (const Error& e) {
    try {
      guard.Fail(e, !IsPeerReported(e));
    } catch (const Error& tagged) {
      report.error = tagged.what();
    }
  } catch (const std::exception& e) {
    report.error = std::string(guard.phase()) + ": " + e.what();
    channel.Close();
  }
  return report;
}

void ServeTcp(const LabService& lab, TcpListener& listener,
              size_t max_sessions,
              const std::function<void(const LabReport&)>& on_report) {
  std::vector<std::thread> workers;
  std::mutex report_mu;
  for (size_t served = 0; max_sessions == 0 || served < max_sessions; ++served) {
    std::unique_ptr<Transport> conn = listener.Accept();
    if (!conn) break;
    workers.emplace_back([&lab, &report_mu, &on_report,
                          conn = std::shared_ptr<Transport>(std::move(conn))] {
      LabReport report = lab.Serve(*conn);
      if (on_report) {
        std::lock_guard<std::mutex> lock(report_mu);
        on_report(report);
      }
    });
  }
  for (auto& w : workers) w.join();
}

LocalRun RunLocal(const LabService& lab, const ProtocolConfig& config,
                  const std::vector<uint32_t>& suspects,
                  const DnaProfile& crime, uint64_t seed,
                  const InvestigatorHooks& hooks) {
  auto [inv_end, lab_end] = MakeInProcessPair();
  LocalRun run;
  std::thread lab_thread([&, lab_transport = lab_end.get()] {
    run.lab = lab.Serve(*lab_transport);
  });
  try {
    run.investigator =
        RunInvestigator(config, suspects, crime, *inv_end, seed, hooks);
  } catch (...) {
    inv_end->Close();
    lab_thread.join();
    throw;
  }
  lab_thread.join();
  return run;
}

}  // namespace blindmatch
