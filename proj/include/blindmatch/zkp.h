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

#ifndef BLINDMATCH_ZKP_H_
#define BLINDMATCH_ZKP_H_

#include <optional>
#include <span>
#include <vector>

#include "blindmatch/group.h"

namespace blindmatch {

// Public anchor c = HashToGroup(tag || sid). Nobody knows log_g(c).
GroupElement DeriveAnchor(const Group& group, std::span<const uint8_t> sid);

// Per-index secrets behind a transfer key set. For a suspect index the key
// is g^x and `secrets` holds x; otherwise the key is c * g^r and `secrets`
// holds r, which does not open the key.
struct KeyWitness {
  std::vector<bool> is_suspect;
  std::vector<Scalar> secrets;

  size_t suspect_count() const;
};

struct TransferKeySet {
  std::vector<GroupElement> public_keys;  // public_keys[i - 1] is k_i
  KeyWitness witness;
};

// `suspects` holds 1-based indices; throws kInvalidArgument when an index is
// out of range, repeated, or there are more suspects than keys.
TransferKeySet BuildTransferKeys(const Group& group,
                                 const std::vector<uint32_t>& suspects,
                                 size_t n, const GroupElement& anchor,
                                 RandomSource& rng);

// Non-interactive proof that the prover knows discrete logs of exactly m of
// the n keys. Per index: a Pedersen commitment to the bit b_i and an OR proof
// of (b_i = 0 and k_i / c = g^r) or (b_i = 1 and k_i = g^x). The product of
// commitments opens to g^m h^R. All branches share one Fiat-Shamir
// challenge; each entry stores the branch-0 share.
struct KofNProof {
  struct Entry {
    GroupElement commitment;
    Scalar challenge0{};
    // Responses: branch 0 (key, commitment), branch 1 (key, commitment).
    std::array<Scalar, 4> responses{};
  };
  Scalar challenge{};
  std::vector<Entry> entries;
  Scalar aggregate_randomness{};
};

// Throws kProver when the witness does not open the keys.
KofNProof ProveKofN(const Group& group,
                    const std::vector<GroupElement>& public_keys,
                    const KeyWitness& witness, std::span<const uint8_t> sid,
                    RandomSource& rng);

// Never throws; malformed input yields false.
bool VerifyKofN(const Group& group,
                const std::vector<GroupElement>& public_keys, size_t m,
                std::span<const uint8_t> sid, const KofNProof& proof);
bool VerifyKofN(const Group& group,
                const std::vector<GroupElement>& public_keys, size_t m,
                std::span<const uint8_t> sid,
                std::span<const uint8_t> proof_bytes);

// group id u8 | n u32 | challenge | n x (commitment, c0, 4 responses) | R,
// with every field prefixed by a u32 length.
Bytes SerializeProof(const Group& group, const KofNProof& proof);
// Rejects non-canonical scalars and element encodings.
std::optional<KofNProof> ParseProof(const Group& group,
                                    std::span<const uint8_t> data);

}  // namespace blindmatch

#endif  // BLINDMATCH_ZKP_H_
