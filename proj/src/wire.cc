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

#include "blindmatch/wire.h"

#include <cstring>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

constexpr uint8_t kMagic[4] = {'B', 'L', 'M', '1'};
constexpr uint8_t kTranscriptMagic[4] = {'P', 'M', 'T', 'R'};

bool KnownType(uint8_t t) { return (t >= 1 && t <= 9) || t == 255; }

}  // namespace

const char* MessageTypeName(MessageType type) {
  switch (type) {
    case MessageType::kHello: return "Hello";
    case MessageType::kHelloAck: return "HelloAck";
    case MessageType::kOtRequest: return "OtRequest";
    case MessageType::kOtAbort: return "OtAbort";
    case MessageType::kOtBlobs: return "OtBlobs";
    case MessageType::kBlindRequest: return "BlindRequest";
    case MessageType::kBlindResponse: return "BlindResponse";
    case MessageType::kMatchRequest: return "MatchRequest";
    case MessageType::kMatchResponse: return "MatchResponse";
    case MessageType::kError: return "Error";
  }
  return "Unknown";
}

Bytes EncodeFrame(MessageType type, std::span<const uint8_t> payload,
                  size_t max_frame) {
  if (payload.size() > max_frame || payload.size() > UINT32_MAX) {
    throw Error(ErrorCode::kProtocol,
                std::string(MessageTypeName(type)) + " payload of " +
                    std::to_string(payload.size()) +
                    " bytes exceeds the frame limit of " +
                    std::to_string(max_frame));
  }
  ByteWriter w;
  w.Raw(kMagic);
  w.U8(kWireVersion);
  w.U8(static_cast<uint8_t>(type));
  w.U32(static_cast<uint32_t>(payload.size()));
  w.Raw(payload);
  return w.Take();
}

uint32_t ParseFrameHeader(std::span<const uint8_t> header, MessageType& type,
                          size_t max_frame) {
  if (header.size() < kFrameHeaderSize ||
      std::memcmp(header.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kProtocol, "bad frame magic");
  }
  ByteReader r(header.subspan(4, kFrameHeaderSize - 4));
  uint8_t version = r.U8();
  if (version != kWireVersion) {
    throw Error(ErrorCode::kProtocol,
                "unsupported wire version " + std::to_string(version));
  }
  uint8_t t = r.U8();
  if (!KnownType(t)) {
    throw Error(ErrorCode::kProtocol,
                "unknown message type " + std::to_string(t));
  }
  type = static_cast<MessageType>(t);
  uint32_t length = r.U32();
  if (length > max_frame) {
    throw Error(ErrorCode::kProtocol, "frame length " + std::to_string(length) +
                                          " exceeds the limit");
  }
  return length;
}

Frame DecodeFrame(std::span<const uint8_t> bytes, size_t max_frame) {
  Frame f;
  uint32_t length = ParseFrameHeader(bytes, f.type, max_frame);
  if (bytes.size() != kFrameHeaderSize + length) {
    throw Error(ErrorCode::kProtocol, "frame length does not match its header");
  }
  f.payload.assign(bytes.begin() + kFrameHeaderSize, bytes.end());
  return f;
}

Transcript::Transcript() : start_(std::chrono::steady_clock::now()) {}

void Transcript::Append(Direction direction, Bytes frame) {
  auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                std::chrono::steady_clock::now() - start_)
                .count();
  entries_.push_back({direction, static_cast<uint64_t>(us), std::move(frame)});
}

Bytes Transcript::Serialize(bool mask_timestamps) const {
  ByteWriter w;
  w.Raw(kTranscriptMagic);
  w.U8(1);
  w.U32(static_cast<uint32_t>(entries_.size()));
  for (const auto& e : entries_) {
    w.U8(static_cast<uint8_t>(e.direction));
    w.U64(mask_timestamps ? 0 : e.timestamp_us);
    w.Blob(e.frame);
  }
  return w.Take();
}

Transcript Transcript::Parse(std::span<const uint8_t> data) {
  ByteReader r(data);
  auto magic = r.Raw(4);
  if (std::memcmp(magic.data(), kTranscriptMagic, 4) != 0 || r.U8() != 1) {
    throw Error(ErrorCode::kProtocol, "not a transcript file");
  }
  Transcript t;
  uint32_t count = r.U32();
  for (uint32_t i = 0; i < count; ++i) {
    uint8_t dir = r.U8();
    if (dir > 1) throw Error(ErrorCode::kProtocol, "bad transcript direction");
    uint64_t ts = r.U64();
    auto frame = r.Blob();
    t.entries_.push_back({static_cast<Direction>(dir), ts,
                          Bytes(frame.begin(), frame.end())});
  }
  r.ExpectEnd();
  return t;
}

void Channel::Send(MessageType type, std::span<const uint8_t> payload) {
  Bytes frame = EncodeFrame(type, payload, max_frame_);
  transport_.Write(frame);
  transcript_.Append(Direction::kSent, std::move(frame));
}

Frame Channel::Receive() {
  Bytes frame(kFrameHeaderSize);
  transport_.ReadExact(frame);
  MessageType type;
  uint32_t length = ParseFrameHeader(frame, type, max_frame_);
  frame.resize(kFrameHeaderSize + length);
  transport_.ReadExact(std::span<uint8_t>(frame).subspan(kFrameHeaderSize));
  Frame f;
  f.type = type;
  f.payload.assign(frame.begin() + kFrameHeaderSize, frame.end());
  transcript_.Append(Direction::kReceived, std::move(frame));
  return f;
}

}  // namespace blindmatch
