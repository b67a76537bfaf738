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

#include "blindmatch/leak_scan.h"

#include <algorithm>
#include <functional>

#include "blindmatch/ot.h"

namespace blindmatch {

namespace {

constexpr size_t kWindow = 4;

struct Pattern {
  std::string secret;
  std::string encoding;
  Bytes bytes;
};

void AddPatterns(const std::string& name, const std::vector<uint64_t>& values,
                 std::vector<Pattern>& out) {
  if (values.size() < 2) return;
  const size_t w = std::min(values.size(), kWindow);
  for (size_t start = 0; start + w <= values.size(); ++start) {
    std::span<const uint64_t> win(values.data() + start, w);
    for (size_t width : {2, 4, 8}) {
      if (width == 2 &&
          std::any_of(win.begin(), win.end(), [](uint64_t v) { return v > 0xffff; })) {
        continue;
      }
      ByteWriter bw;
      for (uint64_t v : win) bw.Uint(v, width);
      out.push_back({name, "u" + std::to_string(width * 8), bw.Take()});
    }
    for (char sep : {' ', ','}) {
      std::string text;
      for (size_t i = 0; i < w; ++i) {
        if (i) text += sep;
        text += std::to_string(win[i]);
      }
      out.push_back({name, "decimal", Bytes(text.begin(), text.end())});
    }
  }
}

bool DecimalBoundary(const Bytes& frame, size_t pos, size_t len) {
  auto digit = [&](size_t i) { return frame[i] >= '0' && frame[i] <= '9'; };
  return (pos == 0 || !digit(pos - 1)) &&
         (pos + len == frame.size() || !digit(pos + len));
}

}  // namespace

LeakReport TranscriptLeakScan(const Transcript& transcript,
                              const LeakSecrets& secrets, GroupId group_id) {
  std::vector<Pattern> patterns;
  std::vector<uint64_t> indices(secrets.suspect_indices.begin(),
                                secrets.suspect_indices.end());
  AddPatterns("suspect-indices", indices, patterns);
  AddPatterns("crime-profile", secrets.crime_entries, patterns);
  for (const auto& s : secrets.suspect_entries) {
    AddPatterns("suspect-profile", s, patterns);
  }

  LeakReport report;
  GroupPtr group;
  const auto& entries = transcript.entries();
  for (size_t f = 0; f < entries.size(); ++f) {
    const Bytes& frame = entries[f].frame;
    for (const Pattern& p : patterns) {
      std::boyer_moore_horspool_searcher searcher(p.bytes.begin(), p.bytes.end());
      for (auto it = frame.begin();;) {
        it = std::search(it, frame.end(), searcher);
        if (it == frame.end()) break;
        size_t offset = static_cast<size_t>(it - frame.begin());
        if (p.encoding != "decimal" ||
            DecimalBoundary(frame, offset, p.bytes.size())) {
          report.hits.push_back({f, p.secret, p.encoding, offset});
        }
        ++it;
      }
    }
    // Count the sealed profiles carried by the transfer phase.
    if (frame.size() >= kFrameHeaderSize &&
        frame[5] == static_cast<uint8_t>(MessageType::kOtBlobs)) {
      try {
        if (!group) group = Group::Create(group_id);
        Frame decoded = DecodeFrame(frame, SIZE_MAX);
        ByteReader r(decoded.payload);
        uint32_t n = r.U32();
        for (uint32_t i = 0; i < n; ++i) {
          report.ot_blob_indices.push_back(ReadSealedProfile(*group, r).index);
        }
        report.ot_blob_count += n;
      } catch (const std::exception&) {
      }
    }
  }
  return report;
}

}  // namespace blindmatch
