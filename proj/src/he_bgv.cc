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

// Leveled BGV over R_q = Z_q[x]/(x^N + 1) with q a product of NTT-friendly
// primes q_0 * ... * q_L. Plaintexts are constants in R_p. Each prime is
// 1 mod p, so dropping a prime during modulus switching leaves the plaintext
// scale unchanged. Multiplication tensors, relinearises with a base-2^w
// digit decomposition of each RNS residue, then switches down one level.
//
// Invariant for a ciphertext (c_0, c_1) at level l:
//   c_0 + c_1 * s = m + p * e   (mod q_0 * ... * q_l)
// with the right-hand side small. Ciphertexts are kept in coefficient form.

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "he_internal.h"
#include "blindmatch/error.h"
#include "blindmatch/field.h"
#include "blindmatch/ntt.h"

namespace blindmatch::detail {

namespace {

using boost::multiprecision::cpp_int;
using Coeffs = std::vector<uint64_t>;

double Log2Sum(double a_bits, double b_bits) {
  double hi = std::max(a_bits, b_bits), lo = std::min(a_bits, b_bits);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

size_t ByteWidth(uint64_t q) { return (std::bit_width(q) + 7) / 8; }

uint64_t SignedToMod(int64_t v, uint64_t q) {
  if (v >= 0) return static_cast<uint64_t>(v) % q;
  uint64_t r = static_cast<uint64_t>(-v) % q;
  return r == 0 ? 0 : q - r;
}

class BgvBackend : public HeBackendImpl {
 public:
  BgvBackend(const HeParams& params, const ParamsHash& hash)
      : n_(params.ring_dimension),
        t_(params.plaintext_modulus),
        top_(params.max_depth),
        eta_(params.noise_eta),
        w_(params.decomposition_bits),
        hash_(hash) {
    primes_ = GenerateNttPrimes(n_, t_, params.modulus_bits);
    for (uint64_t q : primes_) ntt_.emplace_back(q, n_);
    for (uint64_t q : primes_) {
      size_t digits = (std::bit_width(q) + w_ - 1) / w_;
      digit_offset_.push_back(total_digits_);
      digit_count_.push_back(digits);
      total_digits_ += digits;
    }
    // Modulus switching constants.
    t_inv_.resize(primes_.size());
    q_inv_.resize(primes_.size());
    for (size_t l = 0; l < primes_.size(); ++l) {
      t_inv_[l] = InvMod(t_ % primes_[l], primes_[l]);
      for (size_t i = 0; i < l; ++i) {
        q_inv_[l].push_back(InvMod(primes_[l] % primes_[i], primes_[i]));
      }
    }
    // CRT reconstruction per level.
    crt_.resize(primes_.size());
    for (size_t l = 0; l < primes_.size(); ++l) {
      CrtLevel& c = crt_[l];
      c.q = 1;
      for (size_t i = 0; i <= l; ++i) c.q *= primes_[i];
      for (size_t i = 0; i <= l; ++i) {
        cpp_int hat = c.q / primes_[i];
        c.q_hat.push_back(hat);
        c.q_hat_inv.push_back(
            InvMod(static_cast<uint64_t>(hat % primes_[i]), primes_[i]));
      }
      c.half = c.q / 2;
      c.log2_half = std::log2(c.q.convert_to<double>()) - 1.0;
    }
    const double sigma = std::sqrt(eta_ / 2.0);
    const double e_bound = std::min(6.0 * sigma, static_cast<double>(eta_));
    const double tt = static_cast<double>(t_);
    const double spread = 6.0 * sigma * std::sqrt(2.0 * n_ / 3.0);
    fresh_sym_bits_ = std::log2(tt * (e_bound + 1.0));
    fresh_pk_bits_ = std::log2(tt * (e_bound + 2.0 * spread + 1.0));
    mod_switch_bits_ =
        std::log2(tt / 2.0 + 6.0 * tt * std::sqrt(2.0 * n_ / 3.0) /
                                 std::sqrt(12.0));
    relin_bits_ = std::log2(6.0 * std::exp2(static_cast<double>(w_)) /
                            std::sqrt(3.0) * tt * sigma *
                            std::sqrt(static_cast<double>(n_) *
                                      static_cast<double>(total_digits_)));
    tensor_factor_bits_ = std::log2(2.0 * std::sqrt(static_cast<double>(n_)));
  }

  KeyMaterial KeyGen(RandomSource& rng) const override {
    auto sk = std::make_shared<SecretKeyData>();
    sk->key_tag = rng.NextU64();
    sk->s = SampleTernary(rng);
    sk->s_ntt = ToNtt(FromSmall(sk->s, top_));
    sk->s2_ntt = sk->s_ntt;
    for (size_t i = 0; i < primes_.size(); ++i) {
      auto& r = sk->s2_ntt.residues[i];
      for (size_t x = 0; x < n_; ++x) r[x] = MulMod(r[x], r[x], primes_[i]);
    }

    auto pk = std::make_shared<PublicKeyData>();
    pk->key_tag = sk->key_tag;
    rng.Fill(pk->seed);
    pk->a_ntt = ExpandUniform(pk->seed, 0);
    pk->b_ntt = KeySwitchRow(pk->a_ntt, *sk, rng);

    auto ek = std::make_shared<EvaluationKeyData>();
    ek->key_tag = sk->key_tag;
    rng.Fill(ek->seed);
    for (size_t j = 0; j < primes_.size(); ++j) {
      for (size_t k = 0; k < digit_count_[j]; ++k) {
        RnsPoly a = ExpandUniform(ek->seed, 1 + digit_offset_[j] + k);
        RnsPoly b = KeySwitchRow(a, *sk, rng);
        // Gadget term: s^2 * 2^(wk) in residue j, zero elsewhere.
        const uint64_t q = primes_[j];
        const uint64_t g = PowMod(2, w_ * k, q);
        auto& bj = b.residues[j];
        const auto& s2 = sk->s2_ntt.residues[j];
        for (size_t x = 0; x < n_; ++x) {
          bj[x] = AddMod(bj[x], MulMod(s2[x], g, q), q);
        }
        ek->a_ntt.push_back(std::move(a));
        ek->b_ntt.push_back(std::move(b));
      }
    }
    return {sk, pk, ek};
  }

  CiphertextPtr Encrypt(uint64_t m, const PublicKeyData& pk,
                        RandomSource& rng) const override {
    RnsPoly u = ToNtt(FromSmall(SampleTernary(rng), top_));
    auto c = NewCiphertext(0);
    RnsPoly c0 = PointwiseProduct(pk.b_ntt, u, top_);
    RnsPoly c1 = PointwiseProduct(pk.a_ntt, u, top_);
    FromNttInPlace(c0);
    FromNttInPlace(c1);
    AddScaledNoise(c0, rng);
    AddScaledNoise(c1, rng);
    AddConstant(c0, m % t_);
    c->polys = {std::move(c0), std::move(c1)};
    c->noise_bits = fresh_pk_bits_;
    return c;
  }

  CiphertextPtr EncryptSymmetric(uint64_t m, const SecretKeyData& sk,
                                 RandomSource& rng) const override {
    auto c = NewCiphertext(0);
    std::array<uint8_t, 32> seed;
    rng.Fill(seed);
    RnsPoly a = ExpandCiphertextSeed(seed);
    RnsPoly as = ToNtt(a);
    for (size_t i = 0; i < primes_.size(); ++i) {
      auto& r = as.residues[i];
      const auto& s = sk.s_ntt.residues[i];
      for (size_t x = 0; x < n_; ++x) r[x] = MulMod(r[x], s[x], primes_[i]);
    }
    FromNttInPlace(as);
    Negate(as);
    AddScaledNoise(as, rng);
    AddConstant(as, m % t_);
    c->polys = {std::move(as), std::move(a)};
    c->seed = seed;
    c->noise_bits = fresh_sym_bits_;
    return c;
  }

  uint64_t Decrypt(const CiphertextData& c,
                   const SecretKeyData& sk) const override {
    Phase phase = Evaluate(c, sk);
    if (phase.budget <= 0 || !phase.constant_mod_t) {
      throw Error(ErrorCode::kDecryptionFailure,
                  "noise budget exhausted; ciphertext cannot be decrypted");
    }
    return phase.message;
  }

  std::optional<int> NoiseBudget(const CiphertextData& c,
                                 const SecretKeyData& sk) const override {
    Phase phase = Evaluate(c, sk);
    return phase.constant_mod_t ? std::max(phase.budget, 0) : 0;
  }

  CiphertextPtr Add(const CiphertextData& a, const CiphertextData& b,
                    bool subtract) const override {
    auto [x, y] = Align(a, b);
    const size_t level = x->level();
    auto c = NewCiphertext(top_ - static_cast<uint32_t>(level));
    c->polys.resize(2);
    for (size_t k = 0; k < 2; ++k) {
      c->polys[k].residues.resize(level + 1);
      for (size_t i = 0; i <= level; ++i) {
        const uint64_t q = primes_[i];
        const auto& xr = x->polys[k].residues[i];
        const auto& yr = y->polys[k].residues[i];
        auto& out = c->polys[k].residues[i];
        out.resize(n_);
        for (size_t j = 0; j < n_; ++j) {
          out[j] = subtract ? SubMod(xr[j], yr[j], q) : AddMod(xr[j], yr[j], q);
        }
      }
    }
    c->depth = std::max(a.depth, b.depth);
    c->noise_bits = Log2Sum(x->noise_bits, y->noise_bits);
    return c;
  }

  CiphertextPtr Mul(const CiphertextData& a, const CiphertextData& b,
                    const EvaluationKeyData& ek) const override {
    auto [x, y] = Align(a, b);
    const size_t level = x->level();
    RnsPoly a0 = ToNtt(x->polys[0]), a1 = ToNtt(x->polys[1]);
    RnsPoly b0 = ToNtt(y->polys[0]), b1 = ToNtt(y->polys[1]);
    RnsPoly d0 = a0, d1 = a0, d2 = a1;
    for (size_t i = 0; i <= level; ++i) {
      const uint64_t q = primes_[i];
      for (size_t j = 0; j < n_; ++j) {
        d0.residues[i][j] = MulMod(a0.residues[i][j], b0.residues[i][j], q);
        d1.residues[i][j] =
            AddMod(MulMod(a0.residues[i][j], b1.residues[i][j], q),
                   MulMod(a1.residues[i][j], b0.residues[i][j], q), q);
        d2.residues[i][j] = MulMod(a1.residues[i][j], b1.residues[i][j], q);
      }
    }
    FromNttInPlace(d2);
    Relinearize(d2, level, ek, d0, d1);
    FromNttInPlace(d0);
    FromNttInPlace(d1);

    auto c = std::make_shared<CiphertextData>();
    c->backend = HeBackend::kBgv;
    c->params_hash = hash_;
    c->max_depth = top_;
    c->depth = top_ - static_cast<uint32_t>(level);
    c->polys = {std::move(d0), std::move(d1)};
    c->noise_bits =
        Log2Sum(x->noise_bits + y->noise_bits + tensor_factor_bits_,
                relin_bits_);
    return ModSwitch(*c);
  }

  void WritePayload(const CiphertextData& c, ByteWriter& w) const override {
    const size_t level = c.level();
    for (size_t k = 0; k < c.polys.size(); ++k) {
      if (k == 1 && c.seed) {
        w.Raw(*c.seed);
        continue;
      }
      WriteResidues(c.polys[k], level, w);
    }
  }

  void ReadPayload(ByteReader& r, CiphertextData& c) const override {
    const size_t level = c.level();
    c.polys.resize(2);
    c.polys[0] = ReadResidues(r, level);
    if (c.seed) {
      if (level != top_) {
        throw Error(ErrorCode::kProtocol,
                    "seeded ciphertexts must be at the top level");
      }
      auto raw = r.Raw(32);
      std::memcpy(c.seed->data(), raw.data(), 32);
      c.polys[1] = ExpandCiphertextSeed(*c.seed);
    } else {
      c.polys[1] = ReadResidues(r, level);
    }
  }

  Bytes SerializePublicKey(const PublicKeyData& pk) const override {
    ByteWriter w;
    w.U64(pk.key_tag);
    w.Raw(pk.seed);
    WriteResidues(pk.b_ntt, top_, w);
    return w.Take();
  }

  std::shared_ptr<const PublicKeyData> DeserializePublicKey(
      ByteReader& r) const override {
    auto pk = std::make_shared<PublicKeyData>();
    pk->key_tag = r.U64();
    auto seed = r.Raw(32);
    std::memcpy(pk->seed.data(), seed.data(), 32);
    pk->b_ntt = ReadResidues(r, top_);
    pk->a_ntt = ExpandUniform(pk->seed, 0);
    return pk;
  }

  Bytes SerializeEvaluationKey(const EvaluationKeyData& ek) const override {
    ByteWriter w;
    w.U64(ek.key_tag);
    w.Raw(ek.seed);
    w.U32(static_cast<uint32_t>(ek.b_ntt.size()));
    for (const RnsPoly& b : ek.b_ntt) WriteResidues(b, top_, w);
    return w.Take();
  }

  std::shared_ptr<const EvaluationKeyData> DeserializeEvaluationKey(
      ByteReader& r) const override {
    auto ek = std::make_shared<EvaluationKeyData>();
    ek->key_tag = r.U64();
    auto seed = r.Raw(32);
    std::memcpy(ek->seed.data(), seed.data(), 32);
    if (r.U32() != total_digits_) {
      throw Error(ErrorCode::kProtocol, "evaluation key has wrong digit count");
    }
    for (size_t d = 0; d < total_digits_; ++d) {
      ek->b_ntt.push_back(ReadResidues(r, top_));
      ek->a_ntt.push_back(ExpandUniform(ek->seed, 1 + d));
    }
    return ek;
  }

 private:
  struct CrtLevel {
    cpp_int q;
    cpp_int half;
    std::vector<cpp_int> q_hat;
    std::vector<uint64_t> q_hat_inv;
    double log2_half = 0;
  };

  struct Phase {
    uint64_t message = 0;
    int budget = 0;
    bool constant_mod_t = false;
  };

  static uint64_t AddMod(uint64_t a, uint64_t b, uint64_t q) {
    uint64_t s = a + b;
    return s >= q ? s - q : s;
  }
  static uint64_t SubMod(uint64_t a, uint64_t b, uint64_t q) {
    return a >= b ? a - b : a + q - b;
  }

  std::shared_ptr<CiphertextData> NewCiphertext(uint32_t depth) const {
    auto c = std::make_shared<CiphertextData>();
    c->backend = HeBackend::kBgv;
    c->params_hash = hash_;
    c->max_depth = top_;
    c->depth = depth;
    return c;
  }

  std::vector<int8_t> SampleTernary(RandomSource& rng) const {
    std::vector<int8_t> s(n_);
    for (auto& v : s) v = static_cast<int8_t>(rng.UniformBelow(3)) - 1;
    return s;
  }

  std::vector<int64_t> SampleNoise(RandomSource& rng) const {
    const uint64_t mask = eta_ >= 64 ? ~uint64_t{0} : (uint64_t{1} << eta_) - 1;
    std::vector<int64_t> e(n_);
    for (auto& v : e) {
      v = std::popcount(rng.NextU64() & mask) -
          std::popcount(rng.NextU64() & mask);
    }
    return e;
  }

  template <typename Int>
  RnsPoly FromSmall(const std::vector<Int>& v, size_t level) const {
    RnsPoly p;
    p.residues.resize(level + 1);
    for (size_t i = 0; i <= level; ++i) {
      auto& r = p.residues[i];
      r.resize(n_);
      for (size_t x = 0; x < n_; ++x) {
        r[x] = SignedToMod(static_cast<int64_t>(v[x]), primes_[i]);
      }
    }
    return p;
  }

  RnsPoly ToNtt(RnsPoly p) const {
    for (size_t i = 0; i < p.residues.size(); ++i) {
      ntt_[i].Forward(p.residues[i]);
    }
    return p;
  }

  void FromNttInPlace(RnsPoly& p) const {
    for (size_t i = 0; i < p.residues.size(); ++i) {
      ntt_[i].Inverse(p.residues[i]);
    }
  }

  RnsPoly PointwiseProduct(const RnsPoly& a, const RnsPoly& b,
                           size_t level) const {
    RnsPoly out;
    out.residues.resize(level + 1);
    for (size_t i = 0; i <= level; ++i) {
      out.residues[i].resize(n_);
      for (size_t x = 0; x < n_; ++x) {
        out.residues[i][x] =
            MulMod(a.residues[i][x], b.residues[i][x], primes_[i]);
      }
    }
    return out;
  }

  void Negate(RnsPoly& p) const {
    for (size_t i = 0; i < p.residues.size(); ++i) {
      for (auto& x : p.residues[i]) x = x == 0 ? 0 : primes_[i] - x;
    }
  }

  // p += t * e for fresh noise e.
  void AddScaledNoise(RnsPoly& p, RandomSource& rng) const {
    auto e = SampleNoise(rng);
    for (size_t i = 0; i < p.residues.size(); ++i) {
      const uint64_t q = primes_[i];
      const uint64_t tq = t_ % q;
      for (size_t x = 0; x < n_; ++x) {
        p.residues[i][x] =
            AddMod(p.residues[i][x], MulMod(tq, SignedToMod(e[x], q), q), q);
      }
    }
  }

  void AddConstant(RnsPoly& p, uint64_t m) const {
    for (size_t i = 0; i < p.residues.size(); ++i) {
      p.residues[i][0] = AddMod(p.residues[i][0], m % primes_[i], primes_[i]);
    }
  }

  // Uniform ring element in NTT form over every prime, derived from a seed.
  RnsPoly ExpandUniform(const std::array<uint8_t, 32>& seed,
                        uint64_t index) const {
    ByteWriter w;
    w.Raw(std::string_view("blindmatch/bgv-key-uniform"));
    w.Raw(seed);
    w.U64(index);
    RandomSource rng = RandomSource::FromBytes(w.bytes());
    RnsPoly p;
    p.residues.resize(primes_.size());
    for (size_t i = 0; i < primes_.size(); ++i) {
      p.residues[i].resize(n_);
      for (auto& x : p.residues[i]) x = rng.UniformBelow(primes_[i]);
    }
    return p;
  }

  // Uniform ring element in coefficient form for seeded ciphertexts.
  RnsPoly ExpandCiphertextSeed(const std::array<uint8_t, 32>& seed) const {
    ByteWriter w;
    w.Raw(std::string_view("blindmatch/bgv-ct-uniform"));
    w.Raw(seed);
    RandomSource rng = RandomSource::FromBytes(w.bytes());
    RnsPoly p;
    p.residues.resize(primes_.size());
    for (size_t i = 0; i < primes_.size(); ++i) {
      p.residues[i].resize(n_);
      for (auto& x : p.residues[i]) x = rng.UniformBelow(primes_[i]);
    }
    return p;
  }

  // -(a * s) + t * e in NTT form, for key generation.
  RnsPoly KeySwitchRow(const RnsPoly& a_ntt, const SecretKeyData& sk,
                       RandomSource& rng) const {
    RnsPoly te = ToNtt(FromSmall(SampleNoise(rng), top_));
    for (size_t i = 0; i < primes_.size(); ++i) {
      const uint64_t q = primes_[i];
      const uint64_t tq = t_ % q;
      for (size_t x = 0; x < n_; ++x) {
        uint64_t as = MulMod(a_ntt.residues[i][x], sk.s_ntt.residues[i][x], q);
        te.residues[i][x] = SubMod(MulMod(te.residues[i][x], tq, q), as, q);
      }
    }
    return te;
  }

  // Folds d2 * s^2 into (d0, d1) using the evaluation key. d2 is in
  // coefficient form; d0 and d1 are accumulated in NTT form.
  void Relinearize(const RnsPoly& d2, size_t level,
                   const EvaluationKeyData& ek, RnsPoly& d0,
                   RnsPoly& d1) const {
    if (ek.b_ntt.size() != total_digits_) {
      throw Error(ErrorCode::kParameterMismatch,
                  "evaluation key does not match the parameters");
    }
    const uint64_t mask = (uint64_t{1} << w_) - 1;
    Coeffs digit(n_);
    for (size_t j = 0; j <= level; ++j) {
      for (size_t k = 0; k < digit_count_[j]; ++k) {
        const size_t key = digit_offset_[j] + k;
        for (size_t i = 0; i <= level; ++i) {
          const uint64_t q = primes_[i];
          for (size_t x = 0; x < n_; ++x) {
            digit[x] = ((d2.residues[j][x] >> (w_ * k)) & mask) % q;
          }
          ntt_[i].Forward(digit);
          const auto& kb = ek.b_ntt[key].residues[i];
          const auto& ka = ek.a_ntt[key].residues[i];
          auto& o0 = d0.residues[i];
          auto& o1 = d1.residues[i];
          for (size_t x = 0; x < n_; ++x) {
            o0[x] = AddMod(o0[x], MulMod(digit[x], kb[x], q), q);
            o1[x] = AddMod(o1[x], MulMod(digit[x], ka[x], q), q);
          }
        }
      }
    }
  }

  // Drops the top prime of the ciphertext's level.
  CiphertextPtr ModSwitch(const CiphertextData& c) const {
    const size_t level = c.level();
    auto out = NewCiphertext(c.depth + 1);
    const uint64_t ql = primes_[level];
    const uint64_t half = ql / 2;
    out->polys.resize(c.polys.size());
    for (size_t k = 0; k < c.polys.size(); ++k) {
      out->polys[k].residues.resize(level);
      for (size_t i = 0; i < level; ++i) {
        const uint64_t q = primes_[i];
        const uint64_t tq = t_ % q;
        const uint64_t inv = q_inv_[level][i];
        const auto& top = c.polys[k].residues[level];
        const auto& src = c.polys[k].residues[i];
        auto& dst = out->polys[k].residues[i];
        dst.resize(n_);
        for (size_t x = 0; x < n_; ++x) {
          // delta = t * [c_l * t^-1]_{q_l}, centred; delta = c (mod q_l)
          // and delta = 0 (mod t).
          uint64_t v = MulMod(top[x], t_inv_[level], ql);
          uint64_t v_mod_q = v > half ? SubMod(0, (ql - v) % q, q) : v % q;
          uint64_t delta = MulMod(tq, v_mod_q, q);
          dst[x] = MulMod(SubMod(src[x], delta, q), inv, q);
        }
      }
    }
    out->noise_bits = Log2Sum(
        c.noise_bits - std::log2(static_cast<double>(ql)), mod_switch_bits_);
    return out;
  }

  CiphertextPtr Lower(const CiphertextData& c, size_t level) const {
    CiphertextPtr cur = std::make_shared<CiphertextData>(c);
    if (cur->level() > level) {
      auto copy = std::make_shared<CiphertextData>(c);
      copy->seed.reset();
      cur = copy;
    }
    while (cur->level() > level) cur = ModSwitch(*cur);
    return cur;
  }

  std::pair<CiphertextPtr, CiphertextPtr> Align(const CiphertextData& a,
                                                const CiphertextData& b) const {
    if (a.polys.size() != 2 || b.polys.size() != 2) {
      throw Error(ErrorCode::kInvalidArgument, "malformed BGV ciphertext");
    }
    const size_t level = std::min(a.level(), b.level());
    return {Lower(a, level), Lower(b, level)};
  }

  // Computes c_0 + c_1 * s at the ciphertext's level, lifts each coefficient
  // to (-Q/2, Q/2] and reports the constant term mod t along with the noise
  // budget.
  Phase Evaluate(const CiphertextData& c, const SecretKeyData& sk) const {
    const size_t level = c.level();
    RnsPoly v;
    v.residues.resize(level + 1);
    for (size_t i = 0; i <= level; ++i) {
      const uint64_t q = primes_[i];
      Coeffs acc = c.polys[0].residues[i];
      Coeffs c1 = c.polys[1].residues[i];
      ntt_[i].Forward(c1);
      const auto& s = sk.s_ntt.residues[i];
      for (size_t x = 0; x < n_; ++x) c1[x] = MulMod(c1[x], s[x], q);
      ntt_[i].Inverse(c1);
      for (size_t x = 0; x < n_; ++x) acc[x] = AddMod(acc[x], c1[x], q);
      v.residues[i] = std::move(acc);
    }
    const CrtLevel& crt = crt_[level];
    Phase phase;
    phase.constant_mod_t = true;
    cpp_int max_abs = 0;
    for (size_t x = 0; x < n_; ++x) {
      cpp_int value = 0;
      for (size_t i = 0; i <= level; ++i) {
        uint64_t term = MulMod(v.residues[i][x], crt.q_hat_inv[i], primes_[i]);
        value += crt.q_hat[i] * term;
      }
      value %= crt.q;
      bool negative = value > crt.half;
      cpp_int magnitude = negative ? cpp_int(crt.q - value) : value;
      if (magnitude > max_abs) max_abs = magnitude;
      uint64_t mod_t = static_cast<uint64_t>(magnitude % t_);
      if (negative && mod_t != 0) mod_t = t_ - mod_t;
      if (x == 0) {
        phase.message = mod_t;
      } else if (mod_t != 0) {
        phase.constant_mod_t = false;
      }
    }
    double noise = max_abs == 0 ? 0.0 : std::log2(max_abs.convert_to<double>());
    phase.budget = static_cast<int>(std::floor(crt.log2_half - noise));
    return phase;
  }

  void WriteResidues(const RnsPoly& p, size_t level, ByteWriter& w) const {
    for (size_t i = 0; i <= level; ++i) {
      const size_t width = ByteWidth(primes_[i]);
      for (uint64_t x : p.residues[i]) w.Uint(x, width);
    }
  }

  RnsPoly ReadResidues(ByteReader& r, size_t level) const {
    RnsPoly p;
    p.residues.resize(level + 1);
    for (size_t i = 0; i <= level; ++i) {
      const size_t width = ByteWidth(primes_[i]);
      auto& res = p.residues[i];
      res.resize(n_);
      for (auto& x : res) {
        x = r.Uint(width);
        if (x >= primes_[i]) {
          throw Error(ErrorCode::kProtocol, "ring coefficient out of range");
        }
      }
    }
    return p;
  }

  size_t n_;
  uint64_t t_;
  uint32_t top_;
  uint32_t eta_;
  uint32_t w_;
  ParamsHash hash_;
  std::vector<uint64_t> primes_;
  std::vector<NttTables> ntt_;
  std::vector<size_t> digit_offset_, digit_count_;
  size_t total_digits_ = 0;
  std::vector<uint64_t> t_inv_;
  std::vector<std::vector<uint64_t>> q_inv_;
  std::vector<CrtLevel> crt_;
  double fresh_sym_bits_, fresh_pk_bits_, mod_switch_bits_, relin_bits_,
      tensor_factor_bits_;
};

}  // namespace

std::unique_ptr<HeBackendImpl> MakeBgvBackend(const HeParams& params,
                                              const ParamsHash& hash) {
  return std::make_unique<BgvBackend>(params, hash);
}

}  // namespace blindmatch::detail
