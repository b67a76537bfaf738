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

#ifndef BLINDMATCH_OT_H_
#define BLINDMATCH_OT_H_

#include <array>
#include <map>
#include <span>
#include <vector>

#include "blindmatch/group.h"

namespace blindmatch {

// One database blob sealed under transfer key k_i: an ephemeral KEM element
// R = g^e and AES-256-GCM under HKDF(k_i^e, sid, i).
struct SealedProfile {
  uint32_t index = 0;  // 1-based
  GroupElement kem;
  std::array<uint8_t, 12> nonce{};
  Bytes ciphertext;  // includes the 16-byte tag

  friend bool operator==(const SealedProfile&, const SealedProfile&) = default;
};

// blobs[i - 1] is sealed under public_keys[i - 1]. Throws kShape when the
// counts differ.
std::vector<SealedProfile> SealAll(const Group& group,
                                   const std::vector<Bytes>& blobs,
                                   const std::vector<GroupElement>& public_keys,
                                   std::span<const uint8_t> sid,
                                   RandomSource& rng);

// Throws kAuthenticationFailure when `secret` is not the key for this blob.
Bytes OpenSealed(const Group& group, const SealedProfile& sealed,
                 const Scalar& secret, std::span<const uint8_t> sid);

// Opens exactly the listed suspects. `secrets` maps index to its key.
// Throws kMissingWitness when a suspect has no secret, kProtocolDesync when
// no blob carries a suspect's index, kAuthenticationFailure on a bad tag.
std::map<uint32_t, Bytes> OpenSuspects(
    const Group& group, const std::vector<SealedProfile>& sealed,
    const std::vector<uint32_t>& suspects,
    const std::map<uint32_t, Scalar>& secrets, std::span<const uint8_t> sid);

// index u32 | KEM element (u32 length) | nonce (12) | ciphertext (u32 length)
void WriteSealedProfile(const SealedProfile& s, ByteWriter& w);
SealedProfile ReadSealedProfile(const Group& group, ByteReader& r);

}  // namespace blindmatch

#endif  // BLINDMATCH_OT_H_
