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

#ifndef BLINDMATCH_PROFILE_H_
#define BLINDMATCH_PROFILE_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "blindmatch/field.h"
#include "blindmatch/random.h"

namespace blindmatch {

// One row of a profile: the fragment size and signal amplitude of a slot.
struct Slot {
  FieldElement fragment_size;
  FieldElement amplitude;

  friend bool operator==(const Slot&, const Slot&) = default;
};

// A t x 2 matrix of units in Z*_p. Construction rejects zero entries and an
// empty slot list.
class DnaProfile {
 public:
  explicit DnaProfile(std::vector<Slot> slots);

  size_t slot_count() const { return slots_.size(); }
  const Slot& slot(size_t j) const { return slots_.at(j); }
  const std::vector<Slot>& slots() const { return slots_; }
  uint64_t modulus() const { return slots_.front().fragment_size.modulus(); }

  friend bool operator==(const DnaProfile&, const DnaProfile&) = default;

 private:
  std::vector<Slot> slots_;
};

// Entries are indexed 1..n by callers; entries()[i - 1] holds profile i.
class ProfileDatabase {
 public:
  ProfileDatabase(FieldParams field, size_t t, std::vector<DnaProfile> entries);

  const FieldParams& field() const { return field_; }
  size_t slot_count() const { return t_; }
  size_t size() const { return entries_.size(); }
  const std::vector<DnaProfile>& entries() const { return entries_; }
  // 1-based lookup.
  const DnaProfile& at(size_t index) const;

  friend bool operator==(const ProfileDatabase&,
                         const ProfileDatabase&) = default;

 private:
  FieldParams field_;
  size_t t_;
  std::vector<DnaProfile> entries_;
};

class MatchThreshold {
 public:
  explicit MatchThreshold(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

// Row-major: [eta_1, sigma_1, eta_2, sigma_2, ...].
std::vector<FieldElement> Flatten(const DnaProfile& d);
DnaProfile Unflatten(const std::vector<FieldElement>& v, size_t t);

// Each entry uniform in [1, range_bound].
DnaProfile GenerateProfile(const FieldParams& field, size_t t,
                           uint64_t range_bound, RandomSource& rng);

// Moves every entry by a uniform integer in [-max_delta, max_delta] and
// clamps the result into [1, range_bound].
DnaProfile Perturb(const DnaProfile& d, uint64_t max_delta,
                   uint64_t range_bound, RandomSource& rng);

// Sum over slots of (d_eta)^2 * (d_sigma)^2, evaluated in Z_p.
FieldElement PlaintextDistance(const DnaProfile& a, const DnaProfile& b);

// True iff the real fourth root of delta is strictly below tau.
bool MatchDecision(const FieldElement& delta, const MatchThreshold& tau);
double FourthRoot(uint64_t delta);

// The mod-p distance equals the integer distance only when no profile pair
// can wrap around. With entries in [1, B] every coordinate difference is at
// most B - 1, so the condition is t * (B - 1)^4 < p.
bool RangeDisciplineHolds(size_t t, uint64_t range_bound, uint64_t p);

// Sink for library warnings; defaults to stderr. Passing an empty function
// restores the default.
void SetWarningHandler(std::function<void(std::string_view)> handler);
void Warn(std::string_view message);

// Text format:
//   t=<t> p=<p> n=<n>
//   <2t space-separated integers>      (one line per profile)
std::string FormatDatabase(const ProfileDatabase& db);
ProfileDatabase ParseDatabase(std::string_view text);
void WriteDatabaseFile(const std::string& path, const ProfileDatabase& db);
ProfileDatabase ReadDatabaseFile(const std::string& path);

}  // namespace blindmatch

#endif  // BLINDMATCH_PROFILE_H_
