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

#include <string>

#include "blindmatch/error.h"

namespace blindmatch {

uint64_t MulMod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t PowMod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, m);
    base = MulMod(base, base, m);
    exp >>= 1;
  }
  return result;
}

uint64_t InvMod(uint64_t a, uint64_t m) {
  // Extended Euclid on signed 128-bit to keep the Bezout coefficients exact.
  __int128 old_r = a % m, r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::kNonInvertible,
                std::to_string(a) + " is not invertible mod " +
                    std::to_string(m));
  }
  __int128 result = old_s % static_cast<__int128>(m);
  if (result < 0) result += m;
  return static_cast<uint64_t>(result);
}

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                         23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                     1795265022ull}) {
    uint64_t x = PowMod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldParams::FieldParams(uint64_t p) : p_(p) {
  if (p < 5 || p >= (uint64_t{1} << 32)) {
    throw Error(ErrorCode::kInvalidArgument,
                "field modulus must satisfy 5 <= p < 2^32, got " +
                    std::to_string(p));
  }
  if (!IsPrime(p)) {
    throw Error(ErrorCode::kInvalidArgument,
                "field modulus " + std::to_string(p) + " is not prime");
  }
}

FieldElement::FieldElement(uint64_t value, const FieldParams& params)
    : value_(value % params.modulus()), p_(params.modulus()) {}

namespace {

void CheckSameField(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(ErrorCode::kParameterMismatch,
                "field elements from different moduli (" +
                    std::to_string(a.modulus()) + " vs " +
                    std::to_string(b.modulus()) + ")");
  }
}

}  // namespace

FieldElement Add(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  uint64_t s = a.value_ + b.value_;
  return FieldElement(s >= a.p_ ? s - a.p_ : s, a.p_);
}

FieldElement Sub(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  return FieldElement(a.value_ >= b.value_ ? a.value_ - b.value_
                                           : a.value_ + a.p_ - b.value_,
                      a.p_);
}

FieldElement Mul(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  return FieldElement(a.value_ * b.value_ % a.p_, a.p_);
}

FieldElement Neg(const FieldElement& a) {
  return FieldElement((a.p_ - a.value_) % a.p_, a.p_);
}

FieldElement Inv(const FieldElement& a) {
  if (a.value_ == 0) {
    throw Error(ErrorCode::kNonInvertible, "zero has no inverse");
  }
  return FieldElement(InvMod(a.value_, a.p_), a.p_);
}

FieldElement SampleUnit(const FieldParams& params, RandomSource& rng) {
  return FieldElement(rng.UniformInRange(1, params.modulus() - 1), params);
}

FieldElement SampleElement(const FieldParams& params, RandomSource& rng) {
  return FieldElement(rng.UniformBelow(params.modulus()), params);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
  return os << e.value() << " (mod " << e.modulus() << ")";
}

}  // namespace blindmatch
