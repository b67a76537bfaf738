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

// Lattice-backend specifics: noise accounting and failure detection.

#include <gtest/gtest.h>

#include "blindmatch/error.h"
#include "blindmatch/he.h"
#include "blindmatch/random.h"

namespace blindmatch {
namespace {

class BgvTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ctx_ = HeContext::Create(HeParams::Bgv());
    keys_ = ctx_->KeyGen(rng_);
  }
  FieldElement E(uint64_t v) const { return FieldElement(v, ctx_->field()); }
  HeCiphertext Enc(uint64_t v) { return ctx_->Encrypt(E(v), keys_.public_key, rng_); }
  int Budget(const HeCiphertext& c) const {
    return *ctx_->NoiseBudget(c, keys_.secret_key);
  }

  RandomSource rng_ = RandomSource::FromSeed(17, "bgv-test");
  std::shared_ptr<const HeContext> ctx_;
  HeKeys keys_;
};

TEST_F(BgvTest, NoiseBudgetShrinksWithEveryProduct) {
  for (int trial = 0; trial < 20; ++trial) {
    HeCiphertext a = Enc(rng_.UniformBelow(65537));
    HeCiphertext b = ctx_->EncryptSymmetric(E(rng_.UniformBelow(65537)),
                                            keys_.secret_key, rng_);
    for (int level = 0; level < 3; ++level) {
      HeCiphertext c = ctx_->Mul(a, b, keys_.evaluation_key);
      ASSERT_LT(Budget(c), std::min(Budget(a), Budget(b)));
      ASSERT_GT(Budget(c), 0);
      a = c;
      b = c;
    }
  }
}

TEST_F(BgvTest, EstimateIsAnUpperBoundOnMeasuredNoise) {
  // Budget is measured against q_level / 2; the estimate bounds log2 |noise|.
  HeCiphertext c = Enc(3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_GT(c.noise_bits_estimate(), 0);
    c = ctx_->Mul(c, Enc(5), keys_.evaluation_key);
  }
  EXPECT_EQ(ctx_->Decrypt(c, keys_.secret_key).value(), 3u * 125u);
}

TEST_F(BgvTest, NoiseOverflowIsDetectedNotSilent) {
  // Each doubling adds one bit of noise; the plaintext is tracked exactly.
  HeCiphertext c = Enc(1);
  uint64_t expect = 1;
  bool failed = false;
  for (int i = 0; i < 400 && !failed; ++i) {
    c = ctx_->Add(c, c);
    expect = expect * 2 % 65537;
    try {
      ASSERT_EQ(ctx_->Decrypt(c, keys_.secret_key).value(), expect) << "doubling " << i;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kDecryptionFailure);
      failed = true;
    }
  }
  EXPECT_TRUE(failed);
}

TEST_F(BgvTest, SeededSymmetricCiphertextsAreSmaller) {
  Bytes sym = ctx_->Serialize(ctx_->EncryptSymmetric(E(4), keys_.secret_key, rng_));
  Bytes pub = ctx_->Serialize(Enc(4));
  EXPECT_LT(sym.size() * 10, pub.size() * 6);
  // After a product the seed no longer describes the second component.
  HeCiphertext prod = ctx_->Mul(ctx_->Deserialize(sym), Enc(2), keys_.evaluation_key);
  EXPECT_EQ(ctx_->Decrypt(prod, keys_.secret_key).value(), 8u);
}

TEST_F(BgvTest, LevelsAlignAutomatically) {
  HeCiphertext deep = ctx_->Mul(Enc(6), Enc(7), keys_.evaluation_key);
  HeCiphertext fresh = Enc(100);
  EXPECT_EQ(ctx_->Decrypt(ctx_->Add(deep, fresh), keys_.secret_key).value(), 142u);
  EXPECT_EQ(ctx_->Decrypt(ctx_->Sub(fresh, deep), keys_.secret_key).value(), 58u);
  EXPECT_EQ(ctx_->Add(deep, fresh).depth(), 1u);
}

TEST_F(BgvTest, WrongSecretKeyFailsDecryption) {
  RandomSource other = RandomSource::FromSeed(18, "other-key");
  HeKeys k2 = ctx_->KeyGen(other);
  HeCiphertext c = Enc(12);
  try {
    uint64_t v = ctx_->Decrypt(c, k2.secret_key).value();
    EXPECT_NE(v, 12u);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecryptionFailure);
  }
}

TEST(BgvParams, ValidationAndEncoding) {
  HeParams p = HeParams::Bgv();
  EXPECT_EQ(HeParams::Decode(p.Encode()).Encode(), p.Encode());
  HeParams bad = p;
  bad.ring_dimension = 1000;
  EXPECT_THROW(bad.Validate(), Error);
  bad = p;
  bad.modulus_bits = {48, 40};
  EXPECT_THROW(bad.Validate(), Error);
  bad = p;
  bad.plaintext_modulus = 65536;
  EXPECT_THROW(bad.Validate(), Error);
  HeParams q = p;
  q.noise_eta = 10;
  EXPECT_NE(q.Hash(), p.Hash());
}

}  // namespace
}  // namespace blindmatch
