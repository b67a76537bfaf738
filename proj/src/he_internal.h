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

// Backend-facing representation of keys and ciphertexts. Not installed.

#ifndef BLINDMATCH_SRC_HE_INTERNAL_H_
#define BLINDMATCH_SRC_HE_INTERNAL_H_

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "blindmatch/bytes.h"
#include "blindmatch/he.h"

namespace blindmatch::detail {

// Residues of one ring element, residues[i] modulo the i-th chain prime.
struct RnsPoly {
  std::vector<std::vector<uint64_t>> residues;
};

struct CiphertextData {
  HeBackend backend = HeBackend::kTransparent;
  ParamsHash params_hash{};
  uint32_t depth = 0;
  uint32_t max_depth = 0;

  // Transparent backend.
  uint64_t value = 0;
  uint64_t nonce = 0;
  uint64_t key_tag = 0;

  // Lattice backend: coefficient-form ring elements over primes 0..level.
  std::vector<RnsPoly> polys;
  // Set while polys[1] is still the expansion of this seed.
  std::optional<std::array<uint8_t, 32>> seed;
  double noise_bits = 0;

  uint32_t level() const { return max_depth - depth; }
};

struct SecretKeyData {
  uint64_t key_tag = 0;
  std::vector<int8_t> s;
  RnsPoly s_ntt;
  RnsPoly s2_ntt;
};

struct PublicKeyData {
  uint64_t key_tag = 0;
  std::array<uint8_t, 32> seed{};
  RnsPoly b_ntt;
  RnsPoly a_ntt;
};

struct EvaluationKeyData {
  uint64_t key_tag = 0;
  std::array<uint8_t, 32> seed{};
  std::vector<RnsPoly> b_ntt;
  std::vector<RnsPoly> a_ntt;
};

using CiphertextPtr = std::shared_ptr<const CiphertextData>;

class HeBackendImpl {
 public:
  virtual ~HeBackendImpl() = default;

  struct KeyMaterial {
    std::shared_ptr<const SecretKeyData> secret;
    std::shared_ptr<const PublicKeyData> pub;
    std::shared_ptr<const EvaluationKeyData> eval;
  };

  virtual KeyMaterial KeyGen(RandomSource& rng) const = 0;
  virtual CiphertextPtr Encrypt(uint64_t m, const PublicKeyData& pk,
                                RandomSource& rng) const = 0;
  virtual CiphertextPtr EncryptSymmetric(uint64_t m, const SecretKeyData& sk,
                                         RandomSource& rng) const = 0;
  virtual uint64_t Decrypt(const CiphertextData& c,
                           const SecretKeyData& sk) const = 0;
  virtual CiphertextPtr Add(const CiphertextData& a, const CiphertextData& b,
                            bool subtract) const = 0;
  virtual CiphertextPtr Mul(const CiphertextData& a, const CiphertextData& b,
                            const EvaluationKeyData& ek) const = 0;
  virtual std::optional<int> NoiseBudget(const CiphertextData& c,
                                         const SecretKeyData& sk) const = 0;

  virtual void WritePayload(const CiphertextData& c, ByteWriter& w) const = 0;
  // `c` arrives with the header fields filled in.
  virtual void ReadPayload(ByteReader& r, CiphertextData& c) const = 0;

  virtual Bytes SerializePublicKey(const PublicKeyData& pk) const = 0;
  virtual std::shared_ptr<const PublicKeyData> DeserializePublicKey(
      ByteReader& r) const = 0;
  virtual Bytes SerializeEvaluationKey(const EvaluationKeyData& ek) const = 0;
  virtual std::shared_ptr<const EvaluationKeyData> DeserializeEvaluationKey(
      ByteReader& r) const = 0;

};

std::unique_ptr<HeBackendImpl> MakeTransparentBackend(const HeParams& params,
                                                      const ParamsHash& hash);
std::unique_ptr<HeBackendImpl> MakeBgvBackend(const HeParams& params,
                                              const ParamsHash& hash);

}  // namespace blindmatch::detail

#endif  // BLINDMATCH_SRC_HE_INTERNAL_H_
