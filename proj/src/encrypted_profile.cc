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

#include "blindmatch/encrypted_profile.h"

#include "blindmatch/error.h"

namespace blindmatch {

EncryptedProfile::EncryptedProfile(std::vector<HeCiphertext> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() % 2 != 0) {
    throw Error(ErrorCode::kShape,
                "an encrypted profile needs a positive, even entry count");
  }
}

EncryptedProfile EncryptProfile(const HeContext& ctx, const DnaProfile& d,
                                const HePublicKey& pk, RandomSource& rng) {
  std::vector<HeCiphertext> out;
  for (const FieldElement& x : Flatten(d)) out.push_back(ctx.Encrypt(x, pk, rng));
  return EncryptedProfile(std::move(out));
}

EncryptedProfile EncryptProfileSymmetric(const HeContext& ctx,
                                         const DnaProfile& d,
                                         const HeSecretKey& sk,
                                         RandomSource& rng) {
  std::vector<HeCiphertext> out;
  for (const FieldElement& x : Flatten(d)) {
    out.push_back(ctx.EncryptSymmetric(x, sk, rng));
  }
  return EncryptedProfile(std::move(out));
}

DnaProfile DecryptProfile(const HeContext& ctx, const EncryptedProfile& e,
                          const HeSecretKey& sk) {
  std::vector<FieldElement> flat;
  for (const HeCiphertext& c : e.entries()) flat.push_back(ctx.Decrypt(c, sk));
  return Unflatten(flat, e.slot_count());
}

Bytes SerializeEncryptedProfile(const HeContext& ctx,
                                const EncryptedProfile& e) {
  ByteWriter w;
  w.U16(static_cast<uint16_t>(e.slot_count()));
  for (const HeCiphertext& c : e.entries()) w.Blob(ctx.Serialize(c));
  return w.Take();
}

EncryptedProfile DeserializeEncryptedProfile(const HeContext& ctx,
                                             std::span<const uint8_t> data,
                                             size_t expected_t) {
  ByteReader r(data);
  size_t t = r.U16();
  if (t == 0 || (expected_t != 0 && t != expected_t)) {
    throw Error(ErrorCode::kShape, "encrypted profile has unexpected slot count " +
                                       std::to_string(t));
  }
  std::vector<HeCiphertext> entries;
  for (size_t i = 0; i < 2 * t; ++i) entries.push_back(ctx.Deserialize(r.Blob()));
  r.ExpectEnd();
  return EncryptedProfile(std::move(entries));
}

}  // namespace blindmatch
