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

#ifndef BLINDMATCH_FIELD_H_
#define BLINDMATCH_FIELD_H_

#include <cstdint>
#include <ostream>

#include "blindmatch/random.h"

namespace blindmatch {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool IsPrime(uint64_t n);

// Parameters of the prime field Z_p. The modulus must be a prime with
// 5 <= p < 2^32 so that products of two reduced values fit in 64 bits.
class FieldParams {
 public:
  static constexpr uint64_t kDefaultModulus = 65537;

  explicit FieldParams(uint64_t p = kDefaultModulus);

  uint64_t modulus() const { return p_; }

  friend bool operator==(const FieldParams&, const FieldParams&) = default;

 private:
  uint64_t p_;
};

// An element of Z_p. Carries its modulus so that arithmetic between
// elements of different fields is rejected instead of silently reduced.
class FieldElement {
 public:
  // Reduces `value` modulo p.
  FieldElement(uint64_t value, const FieldParams& params);

  uint64_t value() const { return value_; }
  uint64_t modulus() const { return p_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && a.p_ == b.p_;
  }

 private:
  FieldElement(uint64_t value, uint64_t p) : value_(value), p_(p) {}

  friend FieldElement Add(const FieldElement&, const FieldElement&);
  friend FieldElement Sub(const FieldElement&, const FieldElement&);
  friend FieldElement Mul(const FieldElement&, const FieldElement&);
  friend FieldElement Neg(const FieldElement&);
  friend FieldElement Inv(const FieldElement&);

  uint64_t value_;
  uint64_t p_;
};

FieldElement Add(const FieldElement& a, const FieldElement& b);
FieldElement Sub(const FieldElement& a, const FieldElement& b);
FieldElement Mul(const FieldElement& a, const FieldElement& b);
FieldElement Neg(const FieldElement& a);
// Multiplicative inverse by the extended Euclidean algorithm. Throws
// kNonInvertible for zero.
FieldElement Inv(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return Add(a, b);
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return Sub(a, b);
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return Mul(a, b);
}

// Uniform over Z*_p = [1, p-1], rejection sampled.
FieldElement SampleUnit(const FieldParams& params, RandomSource& rng);
// Uniform over Z_p.
FieldElement SampleElement(const FieldParams& params, RandomSource& rng);

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

// Raw modular helpers shared by the HE and profile code.
uint64_t MulMod(uint64_t a, uint64_t b, uint64_t m);
uint64_t PowMod(uint64_t base, uint64_t exp, uint64_t m);
// Inverse of `a` modulo `m` (any modulus, gcd(a, m) must be 1).
uint64_t InvMod(uint64_t a, uint64_t m);

}  // namespace blindmatch

#endif  // BLINDMATCH_FIELD_H_
