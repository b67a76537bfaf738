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

#include <cstring>
#include <string>

#include "he_internal.h"
#include "blindmatch/error.h"
#include "blindmatch/field.h"

namespace blindmatch::detail {

namespace {

// Serialized values are XOR-masked with a digest of public data so that
// plaintexts never appear verbatim on the wire. This hides nothing from
// anyone who knows the format.
uint64_t ValueMask(uint64_t nonce, uint64_t key_tag) {
  ByteWriter w;
  w.Raw(std::string_view("blindmatch/transparent-mask"));
  w.U64(nonce);
  w.U64(key_tag);
  auto digest = Sha256(w.bytes());
  uint64_t mask = 0;
  for (int i = 7; i >= 0; --i) mask = (mask << 8) | digest[i];
  return mask;
}

// SplitMix64 finaliser; derives result nonces without consuming randomness.
uint64_t Mix(uint64_t a, uint64_t b, uint64_t op) {
  uint64_t z = a * 0x9E3779B97F4A7C15ull ^ (b + 0xBF58476D1CE4E5B9ull + op);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class TransparentBackend : public HeBackendImpl {
 public:
  TransparentBackend(const HeParams& params, const ParamsHash& hash)
      : p_(params.plaintext_modulus),
        max_depth_(params.max_depth),
        hash_(hash) {}

  KeyMaterial KeyGen(RandomSource& rng) const override {
    const uint64_t tag = rng.NextU64();
    auto sk = std::make_shared<SecretKeyData>();
    sk->key_tag = tag;
    auto pk = std::make_shared<PublicKeyData>();
    pk->key_tag = tag;
    auto ek = std::make_shared<EvaluationKeyData>();
    ek->key_tag = tag;
    return {sk, pk, ek};
  }

  CiphertextPtr Encrypt(uint64_t m, const PublicKeyData& pk,
                        RandomSource& rng) const override {
    return Fresh(m, pk.key_tag, rng);
  }

  CiphertextPtr EncryptSymmetric(uint64_t m, const SecretKeyData& sk,
                                 RandomSource& rng) const override {
    return Fresh(m, sk.key_tag, rng);
  }

  uint64_t Decrypt(const CiphertextData& c,
                   const SecretKeyData& sk) const override {
    if (c.key_tag != sk.key_tag) {
      throw Error(ErrorCode::kDecryptionFailure,
                  "ciphertext was encrypted under a different key");
    }
    return c.value;
  }

  CiphertextPtr Add(const CiphertextData& a, const CiphertextData& b,
                    bool subtract) const override {
    CheckKeys(a, b);
    auto out = Derived(a, b, subtract ? 2 : 1);
    out->depth = std::max(a.depth, b.depth);
    out->value = subtract ? (a.value + p_ - b.value) % p_
                          : (a.value + b.value) % p_;
    return out;
  }

  CiphertextPtr Mul(const CiphertextData& a, const CiphertextData& b,
                    const EvaluationKeyData& ek) const override {
    CheckKeys(a, b);
    if (ek.key_tag != a.key_tag) {
      throw Error(ErrorCode::kParameterMismatch,
                  "evaluation key belongs to a different key pair");
    }
    auto out = Derived(a, b, 3);
    out->depth = std::max(a.depth, b.depth) + 1;
    out->value = MulMod(a.value, b.value, p_);
    return out;
  }

  std::optional<int> NoiseBudget(const CiphertextData&,
                                 const SecretKeyData&) const override {
    return std::nullopt;
  }

  void WritePayload(const CiphertextData& c, ByteWriter& w) const override {
    w.U64(c.key_tag);
    w.U64(c.nonce);
    w.U64(c.value ^ ValueMask(c.nonce, c.key_tag));
  }

  void ReadPayload(ByteReader& r, CiphertextData& c) const override {
    if (c.seed) {
      throw Error(ErrorCode::kProtocol, "transparent ciphertexts are unseeded");
    }
    c.key_tag = r.U64();
    c.nonce = r.U64();
    c.value = r.U64() ^ ValueMask(c.nonce, c.key_tag);
    if (c.value >= p_) {
      throw Error(ErrorCode::kProtocol, "transparent payload out of range");
    }
  }

  Bytes SerializePublicKey(const PublicKeyData& pk) const override {
    ByteWriter w;
    w.U64(pk.key_tag);
    return w.Take();
  }

  std::shared_ptr<const PublicKeyData> DeserializePublicKey(
      ByteReader& r) const override {
    auto pk = std::make_shared<PublicKeyData>();
    pk->key_tag = r.U64();
    return pk;
  }

  Bytes SerializeEvaluationKey(const EvaluationKeyData& ek) const override {
    ByteWriter w;
    w.U64(ek.key_tag);
    return w.Take();
  }

  std::shared_ptr<const EvaluationKeyData> DeserializeEvaluationKey(
      ByteReader& r) const override {
    auto ek = std::make_shared<EvaluationKeyData>();
    ek->key_tag = r.U64();
    return ek;
  }

 private:
  std::shared_ptr<CiphertextData> Fresh(uint64_t m, uint64_t key_tag,
                                        RandomSource& rng) const {
    auto c = std::make_shared<CiphertextData>();
    c->backend = HeBackend::kTransparent;
    c->params_hash = hash_;
    c->max_depth = max_depth_;
    c->key_tag = key_tag;
    c->nonce = rng.NextU64();
    c->value = m % p_;
    return c;
  }

  std::shared_ptr<CiphertextData> Derived(const CiphertextData& a,
                                          const CiphertextData& b,
                                          uint64_t op) const {
    auto c = std::make_shared<CiphertextData>();
    c->backend = HeBackend::kTransparent;
    c->params_hash = hash_;
    c->max_depth = max_depth_;
    c->key_tag = a.key_tag;
    c->nonce = Mix(a.nonce, b.nonce, op);
    return c;
  }

  static void CheckKeys(const CiphertextData& a, const CiphertextData& b) {
    if (a.key_tag != b.key_tag) {
      throw Error(ErrorCode::kParameterMismatch,
                  "ciphertexts were encrypted under different keys");
    }
  }

  uint64_t p_;
  uint32_t max_depth_;
  ParamsHash hash_;
};

}  // namespace

std::unique_ptr<HeBackendImpl> MakeTransparentBackend(const HeParams& params,
                                                      const ParamsHash& hash) {
  return std::make_unique<TransparentBackend>(params, hash);
}

}  // namespace blindmatch::detail
