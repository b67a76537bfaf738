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

#include "blindmatch/field.h"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include "blindmatch/error.h"
#include "blindmatch/random.h"
#include "test_util.h"

namespace blindmatch {
namespace {

const FieldParams kF;

FieldElement E(uint64_t v) { return FieldElement(v, kF); }

// Extended Euclid on signed 128-bit integers, independent of the library.
uint64_t EuclidInverse(uint64_t a, uint64_t p) {
  __int128 r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  __int128 v = s0 % p;
  return static_cast<uint64_t>(v < 0 ? v + p : v);
}

uint64_t PowOracle(uint64_t b, uint64_t e, uint64_t p) {
  unsigned __int128 r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<uint64_t>(r);
}

TEST(FieldParams, RejectsNonPrimesAndTinyModuli) {
  EXPECT_THROW(FieldParams(4), Error);
  EXPECT_THROW(FieldParams(3), Error);
  EXPECT_THROW(FieldParams(65535), Error);
  EXPECT_THROW(FieldParams(uint64_t{1} << 32), Error);
  EXPECT_NO_THROW(FieldParams(5));
  EXPECT_NO_THROW(FieldParams(4294967291ull));
}

TEST(FieldParams, PrimalityMatchesTrialDivision) {
  for (uint64_t n = 0; n < 20000; ++n) {
    bool expect = n >= 2;
    for (uint64_t d = 2; d * d <= n && expect; ++d) expect = n % d != 0;
    ASSERT_EQ(IsPrime(n), expect) << n;
  }
}

TEST(Field, AddExamples) {
  EXPECT_EQ((E(0) + E(1234)).value(), 1234u);
  EXPECT_EQ((E(65536) + E(1)).value(), 0u);
  EXPECT_EQ((E(40000) + E(30000)).value(), (40000u + 30000u) % 65537u);
  EXPECT_EQ((E(40000) + E(30000)).value(), 4463u);
}

TEST(Field, MulExamples) {
  EXPECT_EQ((E(1) * E(777)).value(), 777u);
  EXPECT_EQ((E(3) * E(21846)).value(), 1u);
  EXPECT_EQ((E(256) * E(256)).value(), 65536u);
}

TEST(Field, InvExamples) {
  EXPECT_EQ(Inv(E(1)).value(), 1u);
  EXPECT_EQ(Inv(E(65536)).value(), 65536u);
  EXPECT_EQ(Inv(E(3)).value(), 21846u);
  EXPECT_EQ(EuclidInverse(3, 65537), 21846u);
  EXPECT_THROW(Inv(E(0)), Error);
}

TEST(Field, InverseAgreesWithEuclidAndFermat) {
  for (uint64_t p : {5ull, 65537ull, 2147483647ull, 4294967291ull}) {
    FieldParams f(p);
    RandomSource rng = RandomSource::FromSeed(p, "field-inverse");
    for (int i = 0; i < 2000; ++i) {
      FieldElement a = SampleUnit(f, rng);
      uint64_t inv = Inv(a).value();
      ASSERT_EQ(inv, EuclidInverse(a.value(), p));
      ASSERT_EQ(inv, PowOracle(a.value(), p - 2, p));
      ASSERT_EQ((a * Inv(a)).value(), 1u);
    }
  }
}

TEST(Field, RingLawsOnRandomTriples) {
  RandomSource rng = RandomSource::FromSeed(7, "field-laws");
  for (uint64_t p : {65537ull, 4294967291ull}) {
    FieldParams f(p);
    for (int i = 0; i < 10000; ++i) {
      FieldElement a = SampleElement(f, rng), b = SampleElement(f, rng),
                   c = SampleElement(f, rng);
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ((a + Neg(a)).value(), 0u);
      ASSERT_EQ(Neg(a).value(), (p - a.value()) % p);
      ASSERT_EQ((a - b).value(),
                static_cast<uint64_t>((a.value() + p - b.value()) % p));
      unsigned __int128 prod =
          static_cast<unsigned __int128>(a.value()) * b.value() % p;
      ASSERT_EQ((a * b).value(), static_cast<uint64_t>(prod));
    }
  }
}

TEST(Field, MixedModuliRejected) {
  FieldParams other(65521);
  EXPECT_THROW(E(3) + FieldElement(3, other), Error);
  EXPECT_THROW(E(3) * FieldElement(3, other), Error);
}

TEST(Field, SampleUnitRangeAndNonZero) {
  FieldParams small(5);
  RandomSource rng = RandomSource::FromSeed(11, "sample-unit");
  for (int i = 0; i < 50; ++i) {
    uint64_t v = SampleUnit(small, rng).value();
    ASSERT_GE(v, 1u);
    ASSERT_LE(v, 4u);
  }
  for (uint64_t i = 0; i < 10 * kF.modulus(); ++i) {
    ASSERT_NE(SampleUnit(kF, rng).value(), 0u);
  }
}

TEST(Field, SampleUnitChiSquare) {
  const double q = boost::math::quantile(boost::math::chi_squared(15), 0.999);
  EXPECT_NEAR(q, testing::kChiSquare15Q999, 1e-3);
  RandomSource rng = RandomSource::FromSeed(12, "sample-unit-chi");
  std::vector<uint64_t> samples;
  for (int i = 0; i < 100000; ++i) samples.push_back(SampleUnit(kF, rng).value());
  EXPECT_LT(testing::ChiSquareUniform(samples, 1, kF.modulus() - 1, 16), q);
}

}  // namespace
}  // namespace blindmatch
