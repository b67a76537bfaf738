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

#ifndef BLINDMATCH_LEAK_SCAN_H_
#define BLINDMATCH_LEAK_SCAN_H_

#include <string>
#include <vector>

#include "blindmatch/group.h"
#include "blindmatch/wire.h"

namespace blindmatch {

// Plaintexts that must never appear on the wire.
struct LeakSecrets {
  std::vector<uint32_t> suspect_indices;
  std::vector<uint64_t> crime_entries;                 // flattened d_s
  std::vector<std::vector<uint64_t>> suspect_entries;  // flattened profiles
};

struct LeakHit {
  size_t frame = 0;       // index into the transcript
  std::string secret;     // "suspect-indices", "crime-profile", "suspect-profile"
  std::string encoding;   // "u16", "u32", "u64", "decimal"
  size_t offset = 0;      // within the frame
};

struct LeakReport {
  std::vector<LeakHit> hits;
  // Number of sealed profiles found in OtBlobs frames.
  size_t ot_blob_count = 0;
  std::vector<uint32_t> ot_blob_indices;
  bool clean() const { return hits.empty(); }
};

// Searches every frame for each secret sequence written as consecutive
// little-endian u16, u32 or u64 values, or as decimal text joined by a space
// or comma. Long sequences are searched as every window of four values;
// sequences of fewer than two values are skipped because single small
// integers occur in any binary stream.
LeakReport TranscriptLeakScan(const Transcript& transcript,
                              const LeakSecrets& secrets,
                              GroupId group = GroupId::kP256);

}  // namespace blindmatch

#endif  // BLINDMATCH_LEAK_SCAN_H_
