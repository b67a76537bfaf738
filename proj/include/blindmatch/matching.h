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

#ifndef BLINDMATCH_MATCHING_H_
#define BLINDMATCH_MATCHING_H_

#include <map>
#include <optional>
#include <vector>

#include "blindmatch/encrypted_profile.h"
#include "blindmatch/profile.h"

namespace blindmatch {

// sum_j (d_eta_j)^2 (d_sigma_j)^2 over ciphertexts, starting from a fresh
// encryption of zero. Consumes two multiplicative levels.
HeCiphertext EncryptedDistance(const HeContext& ctx, const EncryptedProfile& a,
                               const EncryptedProfile& b,
                               const HePublicKey& pk,
                               const HeEvaluationKey& ek, RandomSource& rng);

// Distances in a private random order. position_to_suspect[k] is the suspect
// index behind distances[k] (positions are 1-based on the wire).
struct DistanceVector {
  std::vector<HeCiphertext> distances;
  std::vector<uint32_t> position_to_suspect;
};

DistanceVector EncryptedDistances(
    const HeContext& ctx, const std::map<uint32_t, EncryptedProfile>& suspects,
    const EncryptedProfile& crime, const HePublicKey& pk,
    const HeEvaluationKey& ek, RandomSource& rng);

struct ThresholdOutcome {
  std::vector<uint16_t> positions;  // 1-based, ascending
  bool partial = false;             // some entry failed to decrypt
  std::vector<uint16_t> failed_positions;
  // Decrypted distances, empty where decryption failed.
  std::vector<std::optional<uint64_t>> deltas;
};

// Decrypts each distance, takes the real fourth root and keeps positions with
// root < tau. A decryption failure excludes that position and sets partial.
ThresholdOutcome ThresholdMatch(const HeContext& ctx,
                                const std::vector<HeCiphertext>& distances,
                                const MatchThreshold& tau,
                                const HeSecretKey& sk);

// Maps 1-based positions to suspect indices. Throws kProtocolDesync on an
// unknown position.
std::vector<uint32_t> Resolve(const std::vector<uint16_t>& positions,
                              const std::vector<uint32_t>& position_to_suspect);

// m u16 | tau f64 | m ciphertexts each prefixed by a u32 length.
Bytes SerializeMatchRequest(const HeContext& ctx,
                            const std::vector<HeCiphertext>& distances,
                            double tau);
std::pair<std::vector<HeCiphertext>, MatchThreshold> ParseMatchRequest(
    const HeContext& ctx, std::span<const uint8_t> data);
// count u16 | positions u16 each | partial u8
Bytes SerializeMatchResponse(const ThresholdOutcome& outcome);
ThresholdOutcome ParseMatchResponse(std::span<const uint8_t> data, size_t m);

}  // namespace blindmatch

#endif  // BLINDMATCH_MATCHING_H_
