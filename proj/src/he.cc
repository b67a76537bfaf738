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

#include "blindmatch/he.h"

#include <bit>
#include <cstring>
#include <string>

#include "he_internal.h"
#include "blindmatch/error.h"

namespace blindmatch {

namespace {

constexpr char kCiphertextMagic[4] = {'P', 'M', 'H', 'E'};
constexpr uint8_t kCiphertextVersion = 1;
constexpr uint8_t kFlagSeeded = 0x01;

}  // namespace

const char* HeBackendName(HeBackend backend) {
  switch (backend) {
    case HeBackend::kTransparent: return "transparent";
    case HeBackend::kBgv: return "reference";
  }
  return "unknown";
}

HeBackend ParseHeBackend(std::string_view name) {
  if (name == "transparent") return HeBackend::kTransparent;
  if (name == "reference" || name == "bgv") return HeBackend::kBgv;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown HE backend '" + std::string(name) +
                  "' (expected transparent or reference)");
}

HeParams HeParams::Transparent(uint64_t p) {
  HeParams params;
  params.backend = HeBackend::kTransparent;
  params.plaintext_modulus = p;
  return params;
}

HeParams HeParams::Bgv(uint64_t p) {
  HeParams params;
  params.backend = HeBackend::kBgv;
  params.plaintext_modulus = p;
  return params;
}

HeParams HeParams::ForBackend(HeBackend backend, uint64_t p) {
  return backend == HeBackend::kTransparent ? Transparent(p) : Bgv(p);
}

void HeParams::Validate() const {
  FieldParams field(plaintext_modulus);
  if (max_depth < 1 || max_depth > 32) {
    throw Error(ErrorCode::kInvalidArgument, "max_depth must be in [1, 32]");
  }
  if (backend == HeBackend::kTransparent) return;
  if (backend != HeBackend::kBgv) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported HE backend");
  }
  if (ring_dimension < 16 || !std::has_single_bit(ring_dimension)) {
    throw Error(ErrorCode::kInvalidArgument,
                "ring dimension must be a power of two >= 16");
  }
  if (modulus_bits.size() != max_depth + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "the modulus chain needs max_depth + 1 primes");
  }
  if (noise_eta < 1 || noise_eta > 64) {
    throw Error(ErrorCode::kInvalidArgument, "noise_eta must be in [1, 64]");
  }
  if (decomposition_bits < 4 || decomposition_bits > 60) {
    throw Error(ErrorCode::kInvalidArgument,
                "decomposition_bits must be in [4, 60]");
  }
}

Bytes HeParams::Encode() const {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(backend));
  w.U64(plaintext_modulus);
  w.U32(max_depth);
  if (backend == HeBackend::kBgv) {
    w.U32(ring_dimension);
    w.U8(static_cast<uint8_t>(modulus_bits.size()));
    for (int b : modulus_bits) w.U8(static_cast<uint8_t>(b));
    w.U32(noise_eta);
    w.U32(decomposition_bits);
  }
  return w.Take();
}

HeParams HeParams::Decode(std::span<const uint8_t> data) {
  ByteReader r(data);
  HeParams params;
  uint8_t backend = r.U8();
  if (backend != static_cast<uint8_t>(HeBackend::kTransparent) &&
      backend != static_cast<uint8_t>(HeBackend::kBgv)) {
    throw Error(ErrorCode::kProtocol, "unknown HE backend id " +
                                          std::to_string(backend));
  }
  params.backend = static_cast<HeBackend>(backend);
  params.plaintext_modulus = r.U64();
  params.max_depth = r.U32();
  if (params.backend == HeBackend::kBgv) {
    params.ring_dimension = r.U32();
    params.modulus_bits.assign(r.U8(), 0);
    for (int& b : params.modulus_bits) b = r.U8();
    params.noise_eta = r.U32();
    params.decomposition_bits = r.U32();
  }
  r.ExpectEnd();
  params.Validate();
  return params;
}

ParamsHash HeParams::Hash() const {
  Bytes encoded = Encode();
  TranscriptHash h("blindmatch/he-params/v1");
  h.Absorb(encoded);
  auto digest = h.Digest();
  ParamsHash out;
  std::memcpy(out.data(), digest.data(), out.size());
  return out;
}

HeBackend HeCiphertext::backend() const { return data_->backend; }
const ParamsHash& HeCiphertext::params_hash() const {
  return data_->params_hash;
}
uint32_t HeCiphertext::depth() const { return data_->depth; }
uint32_t HeCiphertext::level() const { return data_->level(); }
uint32_t HeCiphertext::degree() const {
  return data_->backend == HeBackend::kBgv
             ? static_cast<uint32_t>(data_->polys.size() - 1)
             : 1;
}
double HeCiphertext::noise_bits_estimate() const { return data_->noise_bits; }

HeContext::HeContext(const HeParams& params)
    : params_(params), hash_(params.Hash()) {
  impl_ = params.backend == HeBackend::kTransparent
              ? detail::MakeTransparentBackend(params_, hash_)
              : detail::MakeBgvBackend(params_, hash_);
}

HeContext::~HeContext() = default;

std::shared_ptr<const HeContext> HeContext::Create(const HeParams& params) {
  params.Validate();
  return std::shared_ptr<const HeContext>(new HeContext(params));
}

void HeContext::Check(const HeCiphertext& c) const {
  if (!c.data_) {
    throw Error(ErrorCode::kInvalidArgument, "empty ciphertext");
  }
  if (c.data_->backend != params_.backend || c.data_->params_hash != hash_) {
    throw Error(ErrorCode::kParameterMismatch,
                "ciphertext was produced under different HE parameters");
  }
}

HeKeys HeContext::KeyGen(RandomSource& rng) const {
  auto material = impl_->KeyGen(rng);
  HeKeys keys;
  keys.secret_key.data_ = material.secret;
  keys.public_key.data_ = material.pub;
  keys.evaluation_key.data_ = material.eval;
  return keys;
}

namespace {

uint64_t PlaintextValue(const FieldElement& m, const HeParams& params) {
  if (m.modulus() != params.plaintext_modulus) {
    throw Error(ErrorCode::kParameterMismatch,
                "plaintext modulus differs from the HE plaintext space");
  }
  return m.value();
}

template <typename Key>
void RequireKey(const Key& key, const char* what) {
  if (!key) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("missing ") + what);
  }
}

}  // namespace

HeCiphertext HeContext::Encrypt(const FieldElement& m, const HePublicKey& pk,
                                RandomSource& rng) const {
  RequireKey(pk.data_, "public key");
  return HeCiphertext(
      impl_->Encrypt(PlaintextValue(m, params_), *pk.data_, rng));
}

HeCiphertext HeContext::EncryptZero(const HePublicKey& pk,
                                    RandomSource& rng) const {
  RequireKey(pk.data_, "public key");
  return HeCiphertext(impl_->Encrypt(0, *pk.data_, rng));
}

HeCiphertext HeContext::EncryptSymmetric(const FieldElement& m,
                                         const HeSecretKey& sk,
                                         RandomSource& rng) const {
  RequireKey(sk.data_, "secret key");
  return HeCiphertext(
      impl_->EncryptSymmetric(PlaintextValue(m, params_), *sk.data_, rng));
}

FieldElement HeContext::Decrypt(const HeCiphertext& c,
                                const HeSecretKey& sk) const {
  Check(c);
  RequireKey(sk.data_, "secret key");
  return FieldElement(impl_->Decrypt(*c.data_, *sk.data_), field());
}

HeCiphertext HeContext::Add(const HeCiphertext& a,
                            const HeCiphertext& b) const {
  Check(a);
  Check(b);
  return HeCiphertext(impl_->Add(*a.data_, *b.data_, false));
}

HeCiphertext HeContext::Sub(const HeCiphertext& a,
                            const HeCiphertext& b) const {
  Check(a);
  Check(b);
  return HeCiphertext(impl_->Add(*a.data_, *b.data_, true));
}

HeCiphertext HeContext::Mul(const HeCiphertext& a, const HeCiphertext& b,
                            const HeEvaluationKey& ek) const {
  Check(a);
  Check(b);
  RequireKey(ek.data_, "evaluation key");
  if (a.data_->level() == 0 || b.data_->level() == 0) {
    throw Error(ErrorCode::kDepthExhausted,
                "multiplicative depth exhausted (max_depth = " +
                    std::to_string(params_.max_depth) + ")");
  }
  return HeCiphertext(impl_->Mul(*a.data_, *b.data_, *ek.data_));
}

std::optional<int> HeContext::NoiseBudget(const HeCiphertext& c,
                                          const HeSecretKey& sk) const {
  Check(c);
  RequireKey(sk.data_, "secret key");
  return impl_->NoiseBudget(*c.data_, *sk.data_);
}

Bytes HeContext::Serialize(const HeCiphertext& c) const {
  Check(c);
  const auto& d = *c.data_;
  ByteWriter w;
  w.Raw(std::span(reinterpret_cast<const uint8_t*>(kCiphertextMagic), 4));
  w.U8(kCiphertextVersion);
  w.U8(static_cast<uint8_t>(d.backend));
  w.Raw(d.params_hash);
  w.U8(static_cast<uint8_t>(c.degree()));
  w.U8(static_cast<uint8_t>(d.level()));
  w.U8(static_cast<uint8_t>(d.depth));
  w.U8(d.seed ? kFlagSeeded : 0);
  w.F64(d.noise_bits);
  impl_->WritePayload(d, w);
  return w.Take();
}

HeCiphertext HeContext::Deserialize(std::span<const uint8_t> data) const {
  ByteReader r(data);
  auto magic = r.Raw(4);
  if (std::memcmp(magic.data(), kCiphertextMagic, 4) != 0) {
    throw Error(ErrorCode::kProtocol, "bad ciphertext magic");
  }
  if (uint8_t version = r.U8(); version != kCiphertextVersion) {
    throw Error(ErrorCode::kProtocol, "unsupported ciphertext version " +
                                          std::to_string(version));
  }
  auto d = std::make_shared<detail::CiphertextData>();
  d->backend = static_cast<HeBackend>(r.U8());
  auto hash = r.Raw(8);
  std::memcpy(d->params_hash.data(), hash.data(), 8);
  if (d->backend != params_.backend || d->params_hash != hash_) {
    throw Error(ErrorCode::kParameterMismatch,
                "serialized ciphertext uses different HE parameters");
  }
  const uint8_t degree = r.U8();
  const uint8_t level = r.U8();
  const uint8_t depth = r.U8();
  const uint8_t flags = r.U8();
  d->noise_bits = r.F64();
  d->max_depth = params_.max_depth;
  if (depth > params_.max_depth || level != params_.max_depth - depth ||
      degree != 1 || (flags & ~kFlagSeeded) != 0) {
    throw Error(ErrorCode::kProtocol, "inconsistent ciphertext header");
  }
  d->depth = depth;
  if (flags & kFlagSeeded) d->seed.emplace();
  impl_->ReadPayload(r, *d);
  r.ExpectEnd();
  return HeCiphertext(std::move(d));
}

Bytes HeContext::SerializePublicKey(const HePublicKey& pk) const {
  RequireKey(pk.data_, "public key");
  return impl_->SerializePublicKey(*pk.data_);
}

HePublicKey HeContext::DeserializePublicKey(
    std::span<const uint8_t> data) const {
  ByteReader r(data);
  HePublicKey pk;
  pk.data_ = impl_->DeserializePublicKey(r);
  r.ExpectEnd();
  return pk;
}

Bytes HeContext::SerializeEvaluationKey(const HeEvaluationKey& ek) const {
  RequireKey(ek.data_, "evaluation key");
  return impl_->SerializeEvaluationKey(*ek.data_);
}

HeEvaluationKey HeContext::DeserializeEvaluationKey(
    std::span<const uint8_t> data) const {
  ByteReader r(data);
  HeEvaluationKey ek;
  ek.data_ = impl_->DeserializeEvaluationKey(r);
  r.ExpectEnd();
  return ek;
}

}  // namespace blindmatch
