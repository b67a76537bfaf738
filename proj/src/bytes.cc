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

#include "blindmatch/bytes.h"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <bit>
#include <cstring>

#include "blindmatch/error.h"

namespace blindmatch {

void ByteWriter::Uint(uint64_t v, size_t width) {
  for (size_t i = 0; i < width; ++i) {
    out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
}

void ByteWriter::F64(double v) { U64(std::bit_cast<uint64_t>(v)); }

void ByteWriter::Raw(std::span<const uint8_t> data) {
  out_.insert(out_.end(), data.begin(), data.end());
}

void ByteWriter::Raw(std::string_view data) {
  out_.insert(out_.end(), data.begin(), data.end());
}

void ByteWriter::Blob(std::span<const uint8_t> data) {
  U32(static_cast<uint32_t>(data.size()));
  Raw(data);
}

uint64_t ByteReader::Uint(size_t width) {
  auto raw = Raw(width);
  uint64_t v = 0;
  for (size_t i = width; i > 0; --i) v = (v << 8) | raw[i - 1];
  return v;
}

double ByteReader::F64() { return std::bit_cast<double>(U64()); }

std::span<const uint8_t> ByteReader::Raw(size_t n) {
  if (n > remaining()) {
    throw Error(ErrorCode::kProtocol, "truncated message: wanted " +
                                          std::to_string(n) + " bytes, " +
                                          std::to_string(remaining()) +
                                          " left");
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::span<const uint8_t> ByteReader::Blob(size_t max_len) {
  uint32_t len = U32();
  if (len > max_len) {
    throw Error(ErrorCode::kProtocol,
                "length prefix " + std::to_string(len) + " exceeds limit");
  }
  return Raw(len);
}

void ByteReader::ExpectEnd() const {
  if (remaining() != 0) {
    throw Error(ErrorCode::kProtocol,
                std::to_string(remaining()) + " trailing bytes");
  }
}

std::array<uint8_t, 32> Sha256(std::span<const uint8_t> data) {
  std::array<uint8_t, 32> out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

std::string ToHex(std::span<const uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

TranscriptHash::TranscriptHash(std::string_view domain) {
  auto* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  ctx_ = ctx;
  Absorb(domain);
}

TranscriptHash::TranscriptHash(const TranscriptHash& other) {
  auto* ctx = EVP_MD_CTX_new();
  EVP_MD_CTX_copy_ex(ctx, static_cast<const EVP_MD_CTX*>(other.ctx_));
  ctx_ = ctx;
}

TranscriptHash::~TranscriptHash() {
  EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

void TranscriptHash::AbsorbU64(uint64_t v) {
  uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<uint8_t>(v >> (8 * i));
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), buf, sizeof(buf));
}

void TranscriptHash::Absorb(std::span<const uint8_t> data) {
  AbsorbU64(data.size());
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size());
}

void TranscriptHash::Absorb(std::string_view data) {
  Absorb(std::span(reinterpret_cast<const uint8_t*>(data.data()),
                   data.size()));
}

std::array<uint8_t, 32> TranscriptHash::Digest() const {
  TranscriptHash copy(*this);
  std::array<uint8_t, 32> out;
  unsigned int len = 0;
  EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(copy.ctx_), out.data(), &len);
  return out;
}

std::array<uint8_t, 64> TranscriptHash::WideDigest() const {
  std::array<uint8_t, 64> out;
  for (uint8_t half = 0; half < 2; ++half) {
    TranscriptHash copy(*this);
    copy.Absorb(std::span<const uint8_t>(&half, 1));
    auto d = copy.Digest();
    std::memcpy(out.data() + 32 * half, d.data(), 32);
  }
  return out;
}

}  // namespace blindmatch
