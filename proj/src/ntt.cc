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

#include <algorithm>
#include <bit>
#include <string>

#include "blindmatch/error.h"
#include "blindmatch/field.h"

namespace blindmatch {

namespace {

size_t BitReverse(size_t x, int bits) {
  size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

}  // namespace

uint64_t FindPrimitiveRoot(uint64_t q, size_t two_n) {
  if ((q - 1) % two_n != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "modulus does not support the requested root of unity");
  }
  const uint64_t cofactor = (q - 1) / two_n;
  for (uint64_t g = 2; g < q; ++g) {
    uint64_t root = PowMod(g, cofactor, q);
    // root has order dividing 2n; it is primitive iff root^n = -1.
    if (PowMod(root, two_n / 2, q) == q - 1) return root;
  }
  throw Error(ErrorCode::kInvalidArgument, "no primitive root found");
}

NttTables::NttTables(uint64_t q, size_t n) : q_(q), n_(n) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "ring dimension must be a power of two");
  }
  if (q >= (uint64_t{1} << 62)) {
    throw Error(ErrorCode::kInvalidArgument, "NTT modulus must be < 2^62");
  }
  const int log_n = std::countr_zero(n);
  const uint64_t psi = FindPrimitiveRoot(q, 2 * n);
  const uint64_t psi_inv = InvMod(psi, q);
  psi_rev_.resize(n);
  inv_psi_rev_.resize(n);
  uint64_t power = 1, inv_power = 1;
  for (size_t i = 0; i < n; ++i) {
    size_t r = BitReverse(i, log_n);
    psi_rev_[r] = power;
    inv_psi_rev_[r] = inv_power;
    power = MulMod(power, psi, q);
    inv_power = MulMod(inv_power, psi_inv, q);
  }
  psi_rev_shoup_.resize(n);
  inv_psi_rev_shoup_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    psi_rev_shoup_[i] = ShoupPrecompute(psi_rev_[i], q);
    inv_psi_rev_shoup_[i] = ShoupPrecompute(inv_psi_rev_[i], q);
  }
  n_inv_ = InvMod(n % q, q);
  n_inv_shoup_ = ShoupPrecompute(n_inv_, q);
}

void NttTables::Forward(std::span<uint64_t> a) const {
  const uint64_t q = q_;
  size_t t = n_;
  for (size_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (size_t i = 0; i < m; ++i) {
      const size_t j1 = 2 * i * t;
      const uint64_t w = psi_rev_[m + i];
      const uint64_t ws = psi_rev_shoup_[m + i];
      for (size_t j = j1; j < j1 + t; ++j) {
        uint64_t u = a[j];
        uint64_t v = ShoupMul(a[j + t], w, ws, q);
        uint64_t sum = u + v;
        a[j] = sum >= q ? sum - q : sum;
        a[j + t] = u >= v ? u - v : u + q - v;
      }
    }
  }
}

void NttTables::Inverse(std::span<uint64_t> a) const {
  const uint64_t q = q_;
  size_t t = 1;
  for (size_t m = n_; m > 1; m >>= 1) {
    const size_t h = m >> 1;
    size_t j1 = 0;
    for (size_t i = 0; i < h; ++i) {
      const uint64_t w = inv_psi_rev_[h + i];
      const uint64_t ws = inv_psi_rev_shoup_[h + i];
      for (size_t j = j1; j < j1 + t; ++j) {
        uint64_t u = a[j];
        uint64_t v = a[j + t];
        uint64_t sum = u + v;
        a[j] = sum >= q ? sum - q : sum;
        a[j + t] = ShoupMul(u >= v ? u - v : u + q - v, w, ws, q);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (uint64_t& x : a) x = ShoupMul(x, n_inv_, n_inv_shoup_, q);
}

std::vector<uint64_t> GenerateNttPrimes(size_t n, uint64_t t,
                                        std::span<const int> bit_sizes) {
  const unsigned __int128 step = static_cast<unsigned __int128>(2 * n) * t;
  std::vector<uint64_t> primes;
  for (int bits : bit_sizes) {
    if (bits < 20 || bits > 61) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ciphertext prime sizes must be between 20 and 61 bits");
    }
    const unsigned __int128 top = (static_cast<unsigned __int128>(1) << bits);
    if (step * 4 > top) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::to_string(bits) +
                      "-bit primes are too small for 2n * t = " +
                      std::to_string(static_cast<uint64_t>(step)));
    }
    uint64_t k = static_cast<uint64_t>((top - 1) / step);
    bool found = false;
    for (; k > 0 && static_cast<unsigned __int128>(k) * step + 1 > top / 2;
         --k) {
      uint64_t q = static_cast<uint64_t>(k * step + 1);
      if (IsPrime(q) &&
          std::find(primes.begin(), primes.end(), q) == primes.end()) {
        primes.push_back(q);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no NTT-friendly prime of " + std::to_string(bits) +
                      " bits");
    }
  }
  return primes;
}

}  // namespace blindmatch
