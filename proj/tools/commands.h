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

#ifndef BLINDMATCH_TOOLS_COMMANDS_H_
#define BLINDMATCH_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "blindmatch/error.h"
#include "blindmatch/profile.h"
#include "blindmatch/session.h"

namespace blindmatch::cli {

// 0 success, 1 usage, 2 protocol abort, 3 verification failure, 4 I/O,
// 5 configuration mismatch.
int ExitCodeFor(ErrorCode code);

// Entry point of the `blindmatch` tool.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

// "3,1,7" -> {1, 3, 7}; throws kInvalidArgument.
std::vector<uint32_t> ParseSuspectList(const std::string& text);

struct OracleEntry {
  uint32_t suspect = 0;
  uint64_t delta = 0;
  double root = 0;
  bool match = false;
};

// Plaintext ground truth: distance, fourth root and decision per suspect.
std::vector<OracleEntry> RunOracle(const ProfileDatabase& db,
                                   const std::vector<uint32_t>& suspects,
                                   const DnaProfile& crime, double tau);

struct BenchPoint {
  size_t t = 0;
  size_t n = 0;
  size_t m = 0;
  PhaseTimings mean;  // milliseconds, averaged over repetitions
};

// Times the six protocol stages directly on the module APIs (no transport).
BenchPoint RunBenchPoint(size_t t, size_t n, size_t m, HeBackend backend,
                         size_t omega, size_t reps, uint64_t seed);

}  // namespace blindmatch::cli

#endif  // BLINDMATCH_TOOLS_COMMANDS_H_
