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

#ifndef BLINDMATCH_WIRE_H_
#define BLINDMATCH_WIRE_H_

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blindmatch/bytes.h"
#include "blindmatch/transport.h"

namespace blindmatch {

enum class MessageType : uint8_t {
  kHello = 1,
  kHelloAck = 2,
  kOtRequest = 3,
  kOtAbort = 4,
  kOtBlobs = 5,
  kBlindRequest = 6,
  kBlindResponse = 7,
  kMatchRequest = 8,
  kMatchResponse = 9,
  kError = 255,
};

const char* MessageTypeName(MessageType type);

inline constexpr uint8_t kWireVersion = 1;
inline constexpr size_t kFrameHeaderSize = 10;
inline constexpr size_t kDefaultMaxFrame = size_t{64} << 20;

// "BLM1" | version u8 | type u8 | payload length u32 LE | payload
struct Frame {
  MessageType type = MessageType::kError;
  Bytes payload;
};

// Throws kProtocol if the payload exceeds max_frame.
Bytes EncodeFrame(MessageType type, std::span<const uint8_t> payload,
                  size_t max_frame = kDefaultMaxFrame);
// Validates magic, version, type and length; returns the payload length.
// Throws kProtocol on any violation.
uint32_t ParseFrameHeader(std::span<const uint8_t> header, MessageType& type,
                          size_t max_frame = kDefaultMaxFrame);
// Decodes one complete frame occupying all of `bytes`.
Frame DecodeFrame(std::span<const uint8_t> bytes,
                  size_t max_frame = kDefaultMaxFrame);

enum class Direction : uint8_t { kSent = 0, kReceived = 1 };

// Append-only record of the frames one role sent and received.
class Transcript {
 public:
  struct Entry {
    Direction direction;
    uint64_t timestamp_us;  // since the transcript was created
    Bytes frame;            // complete encoded frame
  };

  Transcript();
  void Append(Direction direction, Bytes frame);
  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  // "PMTR" | version u8 | count u32 | entries of direction u8 |
  // timestamp u64 | frame u32-length-prefixed. Masking zeroes timestamps.
  Bytes Serialize(bool mask_timestamps = false) const;
  static Transcript Parse(std::span<const uint8_t> data);

 private:
  std::chrono::steady_clock::time_point start_;
  std::vector<Entry> entries_;
};

// Frames messages over a transport and records them.
class Channel {
 public:
  Channel(Transport& transport, Transcript& transcript,
          size_t max_frame = kDefaultMaxFrame)
      : transport_(transport), transcript_(transcript), max_frame_(max_frame) {}

  void Send(MessageType type, std::span<const uint8_t> payload);
  Frame Receive();
  void Close() { transport_.Close(); }

 private:
  Transport& transport_;
  Transcript& transcript_;
  size_t max_frame_;
};

}  // namespace blindmatch

#endif  // BLINDMATCH_WIRE_H_
