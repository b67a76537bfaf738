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

#ifndef BLINDMATCH_HE_H_
#define BLINDMATCH_HE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "blindmatch/bytes.h"
#include "blindmatch/field.h"
#include "blindmatch/random.h"

namespace blindmatch {

enum class HeBackend : uint8_t {
  // Carries the plaintext with a randomisation nonce. Enforces the same
  // contracts as the lattice scheme (depth, parameter and key checks) but
  // provides no secrecy whatsoever. For protocol tests only.
  kTransparent = 1,
  // Leveled BGV over Z_q[x]/(x^N + 1) with an RNS modulus chain.
  kBgv = 2,
};

const char* HeBackendName(HeBackend backend);
HeBackend ParseHeBackend(std::string_view name);

using ParamsHash = std::array<uint8_t, 8>;

// Parameter set for either backend. The lattice defaults are sized for a
// depth-3 circuit with p = 65537 and make no claim to any concrete security
// level.
struct HeParams {
  HeBackend backend = HeBackend::kBgv;
  uint64_t plaintext_modulus = FieldParams::kDefaultModulus;
  uint32_t max_depth = 3;
  // Lattice backend only.
  uint32_t ring_dimension = 4096;
  // Bit size of each ciphertext prime, bottom of the chain first. The chain
  // has max_depth + 1 primes; every prime is 1 mod 2N and 1 mod p.
  std::vector<int> modulus_bits = {48, 40, 40, 40};
  // Centered-binomial noise parameter eta (variance eta / 2).
  uint32_t noise_eta = 21;
  // Digit width of the relinearisation key decomposition.
  uint32_t decomposition_bits = 20;

  static HeParams Transparent(uint64_t p = FieldParams::kDefaultModulus);
  static HeParams Bgv(uint64_t p = FieldParams::kDefaultModulus);
  static HeParams ForBackend(HeBackend backend,
                             uint64_t p = FieldParams::kDefaultModulus);

  // Throws kInvalidArgument for inconsistent parameters.
  void Validate() const;
  Bytes Encode() const;
  static HeParams Decode(std::span<const uint8_t> data);
  ParamsHash Hash() const;

  friend bool operator==(const HeParams&, const HeParams&) = default;
};

namespace detail {
struct CiphertextData;
struct SecretKeyData;
struct PublicKeyData;
struct EvaluationKeyData;
class HeBackendImpl;
}  // namespace detail

class HeCiphertext {
 public:
  // An empty handle; every HeContext operation rejects it.
  HeCiphertext() = default;
  bool empty() const { return data_ == nullptr; }
  HeBackend backend() const;
  const ParamsHash& params_hash() const;
  // Multiplicative depth consumed so far.
  uint32_t depth() const;
  // Remaining multiplicative levels (max_depth - depth).
  uint32_t level() const;
  // Number of ring elements minus one; always 1 after relinearisation.
  uint32_t degree() const;
  // Heuristic log2 bound on the decryption noise; 0 for the transparent
  // backend.
  double noise_bits_estimate() const;

 private:
  friend class HeContext;
  friend class detail::HeBackendImpl;
  explicit HeCiphertext(std::shared_ptr<const detail::CiphertextData> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const detail::CiphertextData> data_;
};

class HeSecretKey {
 private:
  friend class HeContext;
  std::shared_ptr<const detail::SecretKeyData> data_;
};

class HePublicKey {
 private:
  friend class HeContext;
  std::shared_ptr<const detail::PublicKeyData> data_;
};

// Public material needed to multiply ciphertexts (relinearisation keys).
class HeEvaluationKey {
 private:
  friend class HeContext;
  std::shared_ptr<const detail::EvaluationKeyData> data_;
};

struct HeKeys {
  HeSecretKey secret_key;
  HePublicKey public_key;
  HeEvaluationKey evaluation_key;
};

// Immutable scheme instance. Every operation checks that its inputs carry
// this context's parameter hash and backend, throwing kParameterMismatch
// otherwise. Safe to share across threads.
class HeContext {
 public:
  static std::shared_ptr<const HeContext> Create(const HeParams& params);
  ~HeContext();

  const HeParams& params() const { return params_; }
  const ParamsHash& params_hash() const { return hash_; }
  FieldParams field() const { return FieldParams(params_.plaintext_modulus); }

  HeKeys KeyGen(RandomSource& rng) const;

  HeCiphertext Encrypt(const FieldElement& m, const HePublicKey& pk,
                       RandomSource& rng) const;
  HeCiphertext EncryptZero(const HePublicKey& pk, RandomSource& rng) const;
  // Secret-key encryption. The lattice backend transmits its uniform
  // component as a 32-byte seed, roughly halving the serialized size.
  HeCiphertext EncryptSymmetric(const FieldElement& m, const HeSecretKey& sk,
                                RandomSource& rng) const;

  // Throws kDecryptionFailure when the noise has overflowed.
  FieldElement Decrypt(const HeCiphertext& c, const HeSecretKey& sk) const;

  HeCiphertext Add(const HeCiphertext& a, const HeCiphertext& b) const;
  HeCiphertext Sub(const HeCiphertext& a, const HeCiphertext& b) const;
  // Throws kDepthExhausted when either input has no level left.
  HeCiphertext Mul(const HeCiphertext& a, const HeCiphertext& b,
                   const HeEvaluationKey& ek) const;

  // Exact remaining noise budget in bits, measured with the secret key.
  // Empty for the transparent backend.
  std::optional<int> NoiseBudget(const HeCiphertext& c,
                                 const HeSecretKey& sk) const;

  // Versioned binary encoding:
  //   "PMHE" | version u8 | backend u8 | params hash (8) | degree u8 |
  //   level u8 | depth u8 | flags u8 | noise estimate f64 | payload
  Bytes Serialize(const HeCiphertext& c) const;
  HeCiphertext Deserialize(std::span<const uint8_t> data) const;

  Bytes SerializePublicKey(const HePublicKey& pk) const;
  HePublicKey DeserializePublicKey(std::span<const uint8_t> data) const;
  Bytes SerializeEvaluationKey(const HeEvaluationKey& ek) const;
  HeEvaluationKey DeserializeEvaluationKey(std::span<const uint8_t> data) const;

 private:
  explicit HeContext(const HeParams& params);
  void Check(const HeCiphertext& c) const;

  HeParams params_;
  ParamsHash hash_;
  std::unique_ptr<detail::HeBackendImpl> impl_;
};

using HeContextPtr = std::shared_ptr<const HeContext>;

}  // namespace blindmatch

#endif  // BLINDMATCH_HE_H_
