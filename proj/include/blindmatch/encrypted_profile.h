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

#ifndef BLINDMATCH_ENCRYPTED_PROFILE_H_
#define BLINDMATCH_ENCRYPTED_PROFILE_H_

#include <span>
#include <vector>

#include "blindmatch/he.h"
#include "blindmatch/profile.h"

namespace blindmatch {

// A profile whose 2t entries are homomorphic ciphertexts, stored in the
// flattened row-major order.
class EncryptedProfile {
 public:
  explicit EncryptedProfile(std::vector<HeCiphertext> entries);

  size_t slot_count() const { return entries_.size() / 2; }
  const HeCiphertext& fragment_size(size_t j) const { return entries_.at(2 * j); }
  const HeCiphertext& amplitude(size_t j) const { return entries_.at(2 * j + 1); }
  const std::vector<HeCiphertext>& entries() const { return entries_; }

 private:
  std::vector<HeCiphertext> entries_;
};

EncryptedProfile EncryptProfile(const HeContext& ctx, const DnaProfile& d,
                                const HePublicKey& pk, RandomSource& rng);
// Secret-key variant used by the key holder; smaller on the wire.
EncryptedProfile EncryptProfileSymmetric(const HeContext& ctx,
                                         const DnaProfile& d,
                                         const HeSecretKey& sk,
                                         RandomSource& rng);
DnaProfile DecryptProfile(const HeContext& ctx, const EncryptedProfile& e,
                          const HeSecretKey& sk);

// u16 t, then 2t ciphertexts each prefixed by a u32 length.
Bytes SerializeEncryptedProfile(const HeContext& ctx,
                                const EncryptedProfile& e);
// Throws kShape if the slot count differs from `expected_t` (0 accepts any).
EncryptedProfile DeserializeEncryptedProfile(const HeContext& ctx,
                                             std::span<const uint8_t> data,
                                             size_t expected_t = 0);

}  // namespace blindmatch

#endif  // BLINDMATCH_ENCRYPTED_PROFILE_H_
