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

#ifndef BLINDMATCH_SESSION_H_
#define BLINDMATCH_SESSION_H_

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "blindmatch/group.h"
#include "blindmatch/he.h"
#include "blindmatch/matching.h"
#include "blindmatch/profile.h"
#include "blindmatch/transport.h"
#include "blindmatch/wire.h"

namespace blindmatch {

using SessionId = std::array<uint8_t, 16>;

// Settings both roles must agree on. The Investigator may leave n at 0 to
// adopt the Lab's database size; every other mismatch aborts the hello.
struct ProtocolConfig {
  uint64_t p = FieldParams::kDefaultModulus;
  size_t t = 10;
  size_t n = 0;
  size_t omega = 16;
  double tau = 1.0;
  HeBackend backend = HeBackend::kBgv;
  GroupId group = GroupId::kP256;
  size_t max_frame = kDefaultMaxFrame;
};

// Wall-clock milliseconds per protocol stage. Each role fills the stages it
// executes and leaves the rest at zero.
struct PhaseTimings {
  double ot_key_generation = 0;   // Investigator: transfer keys and proof
  double ot_profile_encryption = 0;  // Lab: proof check and sealing
  double ot_extraction = 0;       // Investigator: opening suspect blobs
  double crime_encryption = 0;    // both: blinded encryption exchange
  double similarities = 0;        // Investigator: encrypted distances
  double find_match = 0;          // Lab: decryption and threshold

  PhaseTimings& operator+=(const PhaseTimings& o);
};

struct InvestigatorHooks {
  // Flip one byte of the serialized proof after proving.
  bool tamper_proof = false;
  // Send the crime profile entries in the clear inside the blind request.
  bool leak_crime_profile = false;
};

struct MatchResult {
  SessionId sid{};
  size_t n = 0;
  size_t m = 0;
  std::vector<uint16_t> positions;       // as returned by the Lab
  std::vector<uint32_t> matched_suspects;  // resolved, ascending
  bool partial = false;
  PhaseTimings timings;
  Transcript transcript;
};

// Runs all four phases as the Investigator. On failure sends an Error frame
// when possible, closes the transport and throws an Error whose message
// starts with the phase name.
MatchResult RunInvestigator(const ProtocolConfig& config,
                            const std::vector<uint32_t>& suspects,
                            const DnaProfile& crime, Transport& transport,
                            uint64_t seed, const InvestigatorHooks& hooks = {});

struct LabReport {
  SessionId sid{};
  bool completed = false;
  bool ot_aborted = false;
  std::string error;  // empty on success
  size_t m = 0;
  ThresholdOutcome outcome;
  PhaseTimings timings;
  Transcript transcript;
};

// Lab state shared by all sessions: HE keys and the encrypted database.
// Immutable after Create; Serve may run concurrently on many transports.
class LabService {
 public:
  static std::shared_ptr<const LabService> Create(
      const ProfileDatabase& db, HeBackend backend, GroupId group,
      uint64_t seed, size_t max_frame = kDefaultMaxFrame);

  const ProfileDatabase& database() const { return db_; }
  const HeContext& he() const { return *ctx_; }
  const HeKeys& keys() const { return keys_; }
  const Group& group() const { return *group_; }

  // Never throws; failures are reported in LabReport::error.
  LabReport Serve(Transport& transport) const;

 private:
  LabService(ProfileDatabase db) : db_(std::move(db)) {}

  ProfileDatabase db_;
  HeContextPtr ctx_;
  HeKeys keys_;
  GroupPtr group_;
  std::vector<Bytes> encrypted_blobs_;
  uint64_t seed_ = 0;
  size_t max_frame_ = kDefaultMaxFrame;
};

// Accepts connections until `max_sessions` have been served (0: until the
// listener is closed), one thread per session.
void ServeTcp(const LabService& lab, TcpListener& listener,
              size_t max_sessions,
              const std::function<void(const LabReport&)>& on_report = {});

// Both roles over an in-process transport pair.
struct LocalRun {
  MatchResult investigator;
  LabReport lab;
};
LocalRun RunLocal(const LabService& lab, const ProtocolConfig& config,
                  const std::vector<uint32_t>& suspects,
                  const DnaProfile& crime, uint64_t seed,
                  const InvestigatorHooks& hooks = {});

}  // namespace blindmatch

#endif  // BLINDMATCH_SESSION_H_
