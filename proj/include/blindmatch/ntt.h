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

#ifndef BLINDMATCH_NTT_H_
#define BLINDMATCH_NTT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace blindmatch {

// x * w mod q using a precomputed Shoup quotient floor(w * 2^64 / q).
// Requires q < 2^63 and w < q.
inline uint64_t ShoupMul(uint64_t x, uint64_t w, uint64_t w_shoup,
                         uint64_t q) {
  uint64_t hi = static_cast<uint64_t>(
      (static_cast<unsigned __int128>(x) * w_shoup) >> 64);
  uint64_t r = x * w - hi * q;
  return r >= q ? r - q : r;
}

inline uint64_t ShoupPrecompute(uint64_t w, uint64_t q) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(w) << 64) / q);
}

// Negacyclic number-theoretic transform over Z_q[x]/(x^n + 1). Forward
// output is in bit-reversed order; Inverse undoes it, including the 1/n
// scaling. Pointwise products of two forward transforms correspond to
// negacyclic convolution.
class NttTables {
 public:
  NttTables(uint64_t q, size_t n);

  uint64_t modulus() const { return q_; }
  size_t size() const { return n_; }

  void Forward(std::span<uint64_t> a) const;
  void Inverse(std::span<uint64_t> a) const;

 private:
  uint64_t q_;
  size_t n_;
  std::vector<uint64_t> psi_rev_, psi_rev_shoup_;
  std::vector<uint64_t> inv_psi_rev_, inv_psi_rev_shoup_;
  uint64_t n_inv_, n_inv_shoup_;
};

// Smallest-index generator search for a primitive 2n-th root of unity mod q.
uint64_t FindPrimitiveRoot(uint64_t q, size_t two_n);

// Distinct primes q with q = 1 (mod 2n) and q = 1 (mod t), one per entry of
// `bit_sizes`, each the largest such prime below 2^bits.
std::vector<uint64_t> GenerateNttPrimes(size_t n, uint64_t t,
                                        std::span<const int> bit_sizes);

}  // namespace blindmatch

#endif  // BLINDMATCH_NTT_H_
