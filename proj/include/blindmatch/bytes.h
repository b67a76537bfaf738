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

#ifndef BLINDMATCH_BYTES_H_
#define BLINDMATCH_BYTES_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blindmatch {

using Bytes = std::vector<uint8_t>;

// Little-endian encoder for the wire formats.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v) { Uint(v, 2); }
  void U32(uint32_t v) { Uint(v, 4); }
  void U64(uint64_t v) { Uint(v, 8); }
  void F64(double v);
  // Unsigned integer of `width` bytes, little-endian.
  void Uint(uint64_t v, size_t width);
  void Raw(std::span<const uint8_t> data);
  void Raw(std::string_view data);
  // u32 length prefix followed by the bytes.
  void Blob(std::span<const uint8_t> data);

  size_t size() const { return out_.size(); }
  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked decoder; every read past the end throws kProtocol.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t U8() { return static_cast<uint8_t>(Uint(1)); }
  uint16_t U16() { return static_cast<uint16_t>(Uint(2)); }
  uint32_t U32() { return static_cast<uint32_t>(Uint(4)); }
  uint64_t U64() { return Uint(8); }
  double F64();
  uint64_t Uint(size_t width);
  std::span<const uint8_t> Raw(size_t n);
  // Reads a u32-length-prefixed blob, rejecting lengths above `max_len`.
  std::span<const uint8_t> Blob(size_t max_len = SIZE_MAX);

  size_t remaining() const { return data_.size() - pos_; }
  size_t position() const { return pos_; }
  // Throws kProtocol if any bytes are left unread.
  void ExpectEnd() const;

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

std::array<uint8_t, 32> Sha256(std::span<const uint8_t> data);
std::string ToHex(std::span<const uint8_t> data);

// Incremental SHA-256 with length-prefixed absorption, used for transcript
// hashing so that concatenation ambiguities cannot arise.
class TranscriptHash {
 public:
  explicit TranscriptHash(std::string_view domain);
  TranscriptHash(const TranscriptHash&);
  TranscriptHash& operator=(const TranscriptHash&) = delete;
  ~TranscriptHash();

  void Absorb(std::span<const uint8_t> data);
  void Absorb(std::string_view data);
  void AbsorbU64(uint64_t v);
  // Finalises a copy; the hash can keep absorbing afterwards.
  std::array<uint8_t, 32> Digest() const;
  // 64 bytes of output (two domain-separated digests) for wide reductions.
  std::array<uint8_t, 64> WideDigest() const;

 private:
  void* ctx_;
};

}  // namespace blindmatch

#endif  // BLINDMATCH_BYTES_H_
