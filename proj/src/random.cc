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

#include "blindmatch/random.h"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cstring>
#include <string>
#include <utility>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

constexpr size_t kBufferSize = 4096;

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};

std::array<uint8_t, 32> DigestSeed(std::span<const uint8_t> material) {
  std::array<uint8_t, 32> key;
  SHA256(material.data(), material.size(), key.data());
  return key;
}

}  // namespace

struct RandomSource::Impl {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx;
  std::array<uint8_t, kBufferSize> buffer;
  size_t offset = kBufferSize;
};

RandomSource::RandomSource(const std::array<uint8_t, 32>& key)
    : impl_(std::make_unique<Impl>()) {
  impl_->ctx.reset(EVP_CIPHER_CTX_new());
  std::array<uint8_t, 16> iv{};
  if (!impl_->ctx ||
      EVP_EncryptInit_ex(impl_->ctx.get(), EVP_aes_256_ctr(), nullptr,
                         key.data(), iv.data()) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "failed to initialise AES-CTR");
  }
}

RandomSource::RandomSource(RandomSource&&) noexcept = default;
RandomSource& RandomSource::operator=(RandomSource&&) noexcept = default;
RandomSource::~RandomSource() = default;

RandomSource RandomSource::FromSeed(uint64_t seed, std::string_view label) {
  std::string material = "blindmatch/rng/v1";
  for (int i = 0; i < 8; ++i) {
    material.push_back(static_cast<char>((seed >> (8 * i)) & 0xff));
  }
  material.append(label);
  return RandomSource(DigestSeed(std::span(
      reinterpret_cast<const uint8_t*>(material.data()), material.size())));
}

RandomSource RandomSource::FromBytes(std::span<const uint8_t> seed_material) {
  return RandomSource(DigestSeed(seed_material));
}

RandomSource RandomSource::FromOsEntropy() {
  std::array<uint8_t, 32> key;
  if (RAND_bytes(key.data(), key.size()) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "OS entropy unavailable");
  }
  return RandomSource(key);
}

void RandomSource::Refill() {
  std::array<uint8_t, kBufferSize> zeros{};
  int out_len = 0;
  EVP_EncryptUpdate(impl_->ctx.get(), impl_->buffer.data(), &out_len,
                    zeros.data(), static_cast<int>(zeros.size()));
  impl_->offset = 0;
}

void RandomSource::Fill(std::span<uint8_t> out) {
  size_t written = 0;
  while (written < out.size()) {
    if (impl_->offset == kBufferSize) Refill();
    size_t take = std::min(out.size() - written, kBufferSize - impl_->offset);
    std::memcpy(out.data() + written, impl_->buffer.data() + impl_->offset,
                take);
    impl_->offset += take;
    written += take;
  }
}

uint64_t RandomSource::NextU64() {
  uint8_t bytes[8];
  Fill(bytes);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

uint64_t RandomSource::UniformBelow(uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::kInvalidArgument, "UniformBelow: zero bound");
  }
  // Largest multiple of bound that fits; reject the tail to avoid bias.
  const uint64_t limit = max() - (max() % bound + 1) % bound;
  while (true) {
    uint64_t v = NextU64();
    if (v <= limit) return v % bound;
  }
}

uint64_t RandomSource::UniformInRange(uint64_t lo, uint64_t hi) {
  if (lo > hi) {
    throw Error(ErrorCode::kInvalidArgument, "UniformInRange: empty range");
  }
  if (lo == 0 && hi == max()) return NextU64();
  return lo + UniformBelow(hi - lo + 1);
}

RandomSource RandomSource::Fork(std::string_view label) {
  std::string material(32, '\0');
  Fill(std::span(reinterpret_cast<uint8_t*>(material.data()), 32));
  material.append(label);
  return RandomSource(DigestSeed(std::span(
      reinterpret_cast<const uint8_t*>(material.data()), material.size())));
}

std::vector<uint32_t> RandomPermutation(size_t n, RandomSource& rng) {
  std::vector<uint32_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = static_cast<uint32_t>(i);
  for (size_t i = n; i > 1; --i) {
    size_t j = rng.UniformBelow(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace blindmatch
