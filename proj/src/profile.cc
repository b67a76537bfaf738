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

#include "blindmatch/profile.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

std::mutex& WarningMutex() {
  static std::mutex mu;
  return mu;
}

std::function<void(std::string_view)>& WarningHandler() {
  static std::function<void(std::string_view)> handler;
  return handler;
}

}  // namespace

void SetWarningHandler(std::function<void(std::string_view)> handler) {
  std::lock_guard lock(WarningMutex());
  WarningHandler() = std::move(handler);
}

void Warn(std::string_view message) {
  std::lock_guard lock(WarningMutex());
  if (WarningHandler()) {
    WarningHandler()(message);
  } else {
    std::cerr << "blindmatch: warning: " << message << "\n";
  }
}

DnaProfile::DnaProfile(std::vector<Slot> slots) : slots_(std::move(slots)) {
  if (slots_.empty()) {
    throw Error(ErrorCode::kShape, "a profile needs at least one slot");
  }
  const uint64_t p = slots_.front().fragment_size.modulus();
  for (const Slot& s : slots_) {
    if (s.fragment_size.modulus() != p || s.amplitude.modulus() != p) {
      throw Error(ErrorCode::kParameterMismatch,
                  "profile entries from different fields");
    }
    if (s.fragment_size.is_zero() || s.amplitude.is_zero()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "profile entries must lie in Z*_p");
    }
  }
}

ProfileDatabase::ProfileDatabase(FieldParams field, size_t t,
                                 std::vector<DnaProfile> entries)
    : field_(field), t_(t), entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorCode::kShape, "database must hold at least one profile");
  }
  for (const DnaProfile& d : entries_) {
    if (d.slot_count() != t_) {
      throw Error(ErrorCode::kShape, "database profiles must share t");
    }
    if (d.modulus() != field_.modulus()) {
      throw Error(ErrorCode::kParameterMismatch,
                  "database profile over a different field");
    }
  }
}

const DnaProfile& ProfileDatabase::at(size_t index) const {
  if (index == 0 || index > entries_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "profile index " + std::to_string(index) + " out of range");
  }
  return entries_[index - 1];
}

MatchThreshold::MatchThreshold(double tau) : tau_(tau) {
  if (!(tau >= 0.0) || std::isinf(tau)) {
    throw Error(ErrorCode::kInvalidArgument,
                "match threshold must be a finite value >= 0");
  }
}

std::vector<FieldElement> Flatten(const DnaProfile& d) {
  std::vector<FieldElement> out;
  out.reserve(2 * d.slot_count());
  for (const Slot& s : d.slots()) {
    out.push_back(s.fragment_size);
    out.push_back(s.amplitude);
  }
  return out;
}

DnaProfile Unflatten(const std::vector<FieldElement>& v, size_t t) {
  if (v.size() != 2 * t) {
    throw Error(ErrorCode::kShape, "cannot unflatten " +
                                       std::to_string(v.size()) +
                                       " values into " + std::to_string(t) +
                                       " slots");
  }
  std::vector<Slot> slots;
  slots.reserve(t);
  for (size_t j = 0; j < t; ++j) slots.push_back({v[2 * j], v[2 * j + 1]});
  return DnaProfile(std::move(slots));
}

DnaProfile GenerateProfile(const FieldParams& field, size_t t,
                           uint64_t range_bound, RandomSource& rng) {
  if (range_bound < 1 || range_bound > field.modulus() - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "range bound must lie in [1, p-1]");
  }
  if (t == 0) throw Error(ErrorCode::kShape, "t must be at least 1");
  std::vector<Slot> slots;
  slots.reserve(t);
  for (size_t j = 0; j < t; ++j) {
    FieldElement eta(rng.UniformInRange(1, range_bound), field);
    FieldElement sigma(rng.UniformInRange(1, range_bound), field);
    slots.push_back({eta, sigma});
  }
  return DnaProfile(std::move(slots));
}

DnaProfile Perturb(const DnaProfile& d, uint64_t max_delta,
                   uint64_t range_bound, RandomSource& rng) {
  FieldParams field(d.modulus());
  if (range_bound < 1 || range_bound > field.modulus() - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "range bound must lie in [1, p-1]");
  }
  auto move = [&](const FieldElement& e) {
    int64_t shifted = static_cast<int64_t>(e.value());
    if (max_delta > 0) {
      shifted += static_cast<int64_t>(rng.UniformBelow(2 * max_delta + 1)) -
                 static_cast<int64_t>(max_delta);
    }
    shifted = std::clamp<int64_t>(shifted, 1, static_cast<int64_t>(range_bound));
    return FieldElement(static_cast<uint64_t>(shifted), field);
  };
  std::vector<Slot> slots;
  slots.reserve(d.slot_count());
  for (const Slot& s : d.slots()) {
    FieldElement eta = move(s.fragment_size);
    FieldElement sigma = move(s.amplitude);
    slots.push_back({eta, sigma});
  }
  return DnaProfile(std::move(slots));
}

FieldElement PlaintextDistance(const DnaProfile& a, const DnaProfile& b) {
  if (a.slot_count() != b.slot_count()) {
    throw Error(ErrorCode::kShape, "profiles have different slot counts");
  }
  FieldParams field(a.modulus());
  FieldElement delta(0, field);
  for (size_t j = 0; j < a.slot_count(); ++j) {
    FieldElement de = a.slot(j).fragment_size - b.slot(j).fragment_size;
    FieldElement ds = a.slot(j).amplitude - b.slot(j).amplitude;
    delta = delta + (de * de) * (ds * ds);
  }
  return delta;
}

double FourthRoot(uint64_t delta) {
  return std::sqrt(std::sqrt(static_cast<double>(delta)));
}

bool MatchDecision(const FieldElement& delta, const MatchThreshold& tau) {
  return FourthRoot(delta.value()) < tau.value();
}

bool RangeDisciplineHolds(size_t t, uint64_t range_bound, uint64_t p) {
  if (range_bound == 0) return true;
  const long double d = static_cast<long double>(range_bound - 1);
  return static_cast<long double>(t) * d * d * d * d <
         static_cast<long double>(p);
}

std::string FormatDatabase(const ProfileDatabase& db) {
  std::ostringstream out;
  out << "t=" << db.slot_count() << " p=" << db.field().modulus()
      << " n=" << db.size() << "\n";
  for (const DnaProfile& d : db.entries()) {
    bool first = true;
    for (const FieldElement& e : Flatten(d)) {
      if (!first) out << ' ';
      out << e.value();
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

uint64_t ParseHeaderField(const std::string& token, std::string_view key) {
  std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::kIo, "malformed database header: expected '" +
                                    prefix + "...', got '" + token + "'");
  }
  try {
    size_t used = 0;
    uint64_t v = std::stoull(token.substr(prefix.size()), &used);
    if (used != token.size() - prefix.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kIo, "malformed database header value: " + token);
  }
}

}  // namespace

ProfileDatabase ParseDatabase(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) {
    throw Error(ErrorCode::kIo, "empty database file");
  }
  std::istringstream hs(header);
  std::string tt, pt, nt, extra;
  if (!(hs >> tt >> pt >> nt) || (hs >> extra)) {
    throw Error(ErrorCode::kIo, "malformed database header: " + header);
  }
  const uint64_t t = ParseHeaderField(tt, "t");
  const uint64_t p = ParseHeaderField(pt, "p");
  const uint64_t n = ParseHeaderField(nt, "n");
  FieldParams field(p);
  std::vector<DnaProfile> entries;
  std::string line;
  while (entries.size() < n && std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<FieldElement> values;
    std::string token;
    while (ls >> token) {
      size_t used = 0;
      uint64_t v = 0;
      try {
        v = std::stoull(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || v == 0 || v >= p) {
        throw Error(ErrorCode::kIo, "bad profile entry '" + token +
                                        "' on line " +
                                        std::to_string(entries.size() + 2));
      }
      values.emplace_back(v, field);
    }
    if (values.size() != 2 * t) {
      throw Error(ErrorCode::kIo, "line " + std::to_string(entries.size() + 2) +
                                      " has " + std::to_string(values.size()) +
                                      " entries, expected " +
                                      std::to_string(2 * t));
    }
    entries.push_back(Unflatten(values, t));
  }
  if (entries.size() != n) {
    throw Error(ErrorCode::kIo, "database declares n=" + std::to_string(n) +
                                    " but holds " +
                                    std::to_string(entries.size()));
  }
  if (std::getline(in, line) && !line.empty()) {
    throw Error(ErrorCode::kIo, "trailing data after the last profile");
  }
  return ProfileDatabase(field, t, std::move(entries));
}

void WriteDatabaseFile(const std::string& path, const ProfileDatabase& db) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << FormatDatabase(db);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

ProfileDatabase ReadDatabaseFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseDatabase(buf.str());
}

}  // namespace blindmatch
