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

#ifndef BLINDMATCH_RANDOM_H_
#define BLINDMATCH_RANDOM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace blindmatch {

// Deterministic random bit generator: AES-256 in counter mode keyed by a
// SHA-256 digest of the seed material. Seeded instances produce identical
// streams on every platform; FromOsEntropy() draws its key from the OS.
//
// Not thread-safe. Give each role or worker its own instance (see Fork).
class RandomSource {
 public:
  using result_type = uint64_t;

  static RandomSource FromSeed(uint64_t seed, std::string_view label = {});
  static RandomSource FromBytes(std::span<const uint8_t> seed_material);
  static RandomSource FromOsEntropy();

  RandomSource(RandomSource&&) noexcept;
  RandomSource& operator=(RandomSource&&) noexcept;
  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;
  ~RandomSource();

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();

  // Uniform in [0, bound) by rejection sampling; bound must be nonzero.
  uint64_t UniformBelow(uint64_t bound);
  // Uniform in [lo, hi], inclusive on both ends.
  uint64_t UniformInRange(uint64_t lo, uint64_t hi);

  // Child generator whose stream is independent of, and reproducible from,
  // this one. Consumes 32 bytes of the parent stream.
  RandomSource Fork(std::string_view label);

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~uint64_t{0}; }
  uint64_t operator()() { return NextU64(); }

 private:
  struct Impl;
  explicit RandomSource(const std::array<uint8_t, 32>& key);
  void Refill();

  std::unique_ptr<Impl> impl_;
};

// Fisher-Yates permutation of [0, n) driven by `rng`; independent of the
// standard library's shuffle so that seeded runs are portable.
std::vector<uint32_t> RandomPermutation(size_t n, RandomSource& rng);

}  // namespace blindmatch

#endif  // BLINDMATCH_RANDOM_H_
