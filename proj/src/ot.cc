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

#include "blindmatch/ot.h"

#include <openssl/evp.h>
#include <openssl/kdf.h>

#include <memory>
#include <optional>
#include <string>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

constexpr size_t kTagSize = 16;

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* c) const { EVP_PKEY_CTX_free(c); }
};

void Check(int ok, const char* what) {
  if (ok <= 0) throw Error(ErrorCode::kInvalidArgument, std::string("ot: ") + what);
}

std::array<uint8_t, 32> DeriveKey(const GroupElement& shared,
                                  std::span<const uint8_t> sid,
                                  uint32_t index) {
  std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter> ctx(
      EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr));
  Check(ctx != nullptr, "hkdf context");
  Check(EVP_PKEY_derive_init(ctx.get()), "hkdf init");
  Check(EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()), "hkdf digest");
  Check(EVP_PKEY_CTX_set1_hkdf_salt(ctx.get(), sid.data(),
                                    static_cast<int>(sid.size())),
        "hkdf salt");
  Check(EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), shared.bytes.data(),
                                   static_cast<int>(shared.bytes.size())),
        "hkdf key");
  ByteWriter info;
  info.Raw(std::string_view("blindmatch/ot-dem/v1"));
  info.U32(index);
  Check(EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), info.bytes().data(),
                                    static_cast<int>(info.size())),
        "hkdf info");
  std::array<uint8_t, 32> key;
  size_t len = key.size();
  Check(EVP_PKEY_derive(ctx.get(), key.data(), &len), "hkdf derive");
  return key;
}

Bytes Aad(std::span<const uint8_t> sid, uint32_t index) {
  ByteWriter w;
  w.U32(index);
  w.Blob(sid);
  return w.Take();
}

Bytes Seal(const std::array<uint8_t, 32>& key,
           const std::array<uint8_t, 12>& nonce, std::span<const uint8_t> aad,
           std::span<const uint8_t> plaintext) {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  Check(ctx != nullptr, "cipher context");
  Check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                           nonce.data()),
        "gcm init");
  int len = 0;
  Check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                          static_cast<int>(aad.size())),
        "gcm aad");
  Bytes out(plaintext.size() + kTagSize);
  Check(EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())),
        "gcm encrypt");
  int tail = 0;
  Check(EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &tail), "gcm final");
  Check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagSize,
                            out.data() + plaintext.size()),
        "gcm tag");
  return out;
}

std::optional<Bytes> Open(const std::array<uint8_t, 32>& key,
                          const std::array<uint8_t, 12>& nonce,
                          std::span<const uint8_t> aad,
                          std::span<const uint8_t> sealed) {
  if (sealed.size() < kTagSize) return std::nullopt;
  const size_t body = sealed.size() - kTagSize;
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  Check(ctx != nullptr, "cipher context");
  Check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                           nonce.data()),
        "gcm init");
  int len = 0;
  Check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                          static_cast<int>(aad.size())),
        "gcm aad");
  Bytes out(body);
  Check(EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data(),
                          static_cast<int>(body)),
        "gcm decrypt");
  Bytes tag(sealed.begin() + body, sealed.end());
  Check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagSize,
                            tag.data()),
        "gcm tag");
  int tail = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &tail) <= 0) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

std::vector<SealedProfile> SealAll(const Group& group,
                                   const std::vector<Bytes>& blobs,
                                   const std::vector<GroupElement>& public_keys,
                                   std::span<const uint8_t> sid,
                                   RandomSource& rng) {
  if (blobs.size() != public_keys.size()) {
    throw Error(ErrorCode::kShape, "expected " + std::to_string(blobs.size()) +
                                       " transfer keys, got " +
                                       std::to_string(public_keys.size()));
  }
  std::vector<SealedProfile> out;
  out.reserve(blobs.size());
  for (size_t i = 0; i < blobs.size(); ++i) {
    SealedProfile s;
    s.index = static_cast<uint32_t>(i + 1);
    Scalar e = group.RandomScalar(rng);
    s.kem = group.ExpG(e);
    GroupElement shared = group.Exp(public_keys[i], e);
    rng.Fill(s.nonce);
    s.ciphertext = Seal(DeriveKey(shared, sid, s.index), s.nonce,
                        Aad(sid, s.index), blobs[i]);
    out.push_back(std::move(s));
  }
  return out;
}

Bytes OpenSealed(const Group& group, const SealedProfile& sealed,
                 const Scalar& secret, std::span<const uint8_t> sid) {
  GroupElement shared = group.Exp(sealed.kem, secret);
  auto plain = Open(DeriveKey(shared, sid, sealed.index), sealed.nonce,
                    Aad(sid, sealed.index), sealed.ciphertext);
  if (!plain) {
    throw Error(ErrorCode::kAuthenticationFailure,
                "sealed profile " + std::to_string(sealed.index) +
                    " failed authentication");
  }
  return std::move(*plain);
}

std::map<uint32_t, Bytes> OpenSuspects(
    const Group& group, const std::vector<SealedProfile>& sealed,
    const std::vector<uint32_t>& suspects,
    const std::map<uint32_t, Scalar>& secrets, std::span<const uint8_t> sid) {
  std::map<uint32_t, const SealedProfile*> by_index;
  for (const auto& s : sealed) by_index[s.index] = &s;
  std::map<uint32_t, Bytes> out;
  for (uint32_t index : suspects) {
    auto secret = secrets.find(index);
    if (secret == secrets.end()) {
      throw Error(ErrorCode::kMissingWitness,
                  "no transfer secret for suspect " + std::to_string(index));
    }
    auto blob = by_index.find(index);
    if (blob == by_index.end()) {
      throw Error(ErrorCode::kProtocolDesync,
                  "no sealed profile for suspect " + std::to_string(index));
    }
    out[index] = OpenSealed(group, *blob->second, secret->second, sid);
  }
  return out;
}

void WriteSealedProfile(const SealedProfile& s, ByteWriter& w) {
  w.U32(s.index);
  w.Blob(s.kem.bytes);
  w.Raw(s.nonce);
  w.Blob(s.ciphertext);
}

SealedProfile ReadSealedProfile(const Group& group, ByteReader& r) {
  SealedProfile s;
  s.index = r.U32();
  auto kem = group.Decode(r.Blob(group.element_size()));
  if (!kem) throw Error(ErrorCode::kProtocol, "invalid KEM element");
  s.kem = *kem;
  auto nonce = r.Raw(12);
  std::copy(nonce.begin(), nonce.end(), s.nonce.begin());
  auto ct = r.Blob();
  s.ciphertext.assign(ct.begin(), ct.end());
  return s;
}

}  // namespace blindmatch
