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

#include "blindmatch/ntt.h"

#include <gtest/gtest.h>

#include "blindmatch/field.h"
#include "blindmatch/random.h"

namespace blindmatch {
namespace {

using u128 = unsigned __int128;

std::vector<uint64_t> SchoolbookNegacyclic(const std::vector<uint64_t>& a,
                                           const std::vector<uint64_t>& b,
                                           uint64_t q) {
  const size_t n = a.size();
  std::vector<uint64_t> c(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      uint64_t prod = static_cast<uint64_t>(u128(a[i]) * b[j] % q);
      size_t k = i + j;
      if (k < n) {
        c[k] = (c[k] + prod) % q;
      } else {
        c[k - n] = (c[k - n] + q - prod) % q;
      }
    }
  }
  return c;
}

std::vector<uint64_t> RandomPoly(size_t n, uint64_t q, RandomSource& rng) {
  std::vector<uint64_t> v(n);
  for (auto& x : v) x = rng.UniformBelow(q);
  return v;
}

TEST(Ntt, ShoupMulMatchesWideProduct) {
  RandomSource rng = RandomSource::FromSeed(1, "shoup");
  for (uint64_t q : {65537ull, 1152921504606830593ull, (1ull << 62) - 57}) {
    for (int i = 0; i < 10000; ++i) {
      uint64_t x = rng.UniformBelow(q), w = rng.UniformBelow(q);
      ASSERT_EQ(ShoupMul(x, w, ShoupPrecompute(w, q), q),
                static_cast<uint64_t>(u128(x) * w % q));
    }
  }
}

TEST(Ntt, GeneratedPrimesSatisfyConstraints) {
  const std::vector<int> bits = {48, 40, 40, 40};
  auto primes = GenerateNttPrimes(4096, 65537, bits);
  ASSERT_EQ(primes.size(), bits.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    EXPECT_TRUE(IsPrime(primes[i]));
    EXPECT_EQ(primes[i] % 8192, 1u);
    EXPECT_EQ(primes[i] % 65537, 1u);
    EXPECT_LT(primes[i], uint64_t{1} << bits[i]);
    EXPECT_GE(primes[i], uint64_t{1} << (bits[i] - 1));
    for (size_t j = 0; j < i; ++j) EXPECT_NE(primes[i], primes[j]);
  }
}

TEST(Ntt, RootHasExactOrder) {
  auto primes = GenerateNttPrimes(64, 65537, std::vector<int>{40});
  uint64_t q = primes[0];
  uint64_t psi = FindPrimitiveRoot(q, 128);
  auto pow = [&](uint64_t b, uint64_t e) {
    u128 r = 1, x = b;
    while (e) {
      if (e & 1) r = r * x % q;
      x = x * x % q;
      e >>= 1;
    }
    return static_cast<uint64_t>(r);
  };
  EXPECT_EQ(pow(psi, 128), 1u);
  EXPECT_EQ(pow(psi, 64), q - 1);
}

TEST(Ntt, RoundTripAndConvolutionMatchSchoolbook) {
  RandomSource rng = RandomSource::FromSeed(2, "ntt");
  for (size_t n : {8u, 64u, 256u}) {
    for (int bits : {36, 48, 60}) {
      uint64_t q = GenerateNttPrimes(n, 65537, std::vector<int>{bits})[0];
      NttTables tables(q, n);
      for (int trial = 0; trial < 5; ++trial) {
        auto a = RandomPoly(n, q, rng), b = RandomPoly(n, q, rng);
        auto fa = a, fb = b;
        tables.Forward(fa);
        tables.Forward(fb);
        auto back = fa;
        tables.Inverse(back);
        ASSERT_EQ(back, a);
        std::vector<uint64_t> prod(n);
        for (size_t i = 0; i < n; ++i) {
          prod[i] = static_cast<uint64_t>(u128(fa[i]) * fb[i] % q);
        }
        tables.Inverse(prod);
        ASSERT_EQ(prod, SchoolbookNegacyclic(a, b, q)) << "n=" << n;
      }
    }
  }
}

TEST(Ntt, MultiplyByXIsNegacyclicShift) {
  const size_t n = 16;
  uint64_t q = GenerateNttPrimes(n, 65537, std::vector<int>{40})[0];
  NttTables tables(q, n);
  std::vector<uint64_t> a(n), x(n, 0);
  for (size_t i = 0; i < n; ++i) a[i] = i + 1;
  x[1] = 1;
  auto fa = a;
  tables.Forward(fa);
  tables.Forward(x);
  for (size_t i = 0; i < n; ++i) fa[i] = static_cast<uint64_t>(u128(fa[i]) * x[i] % q);
  tables.Inverse(fa);
  EXPECT_EQ(fa[0], q - n);
  for (size_t i = 1; i < n; ++i) EXPECT_EQ(fa[i], i);
}

}  // namespace
}  // namespace blindmatch
