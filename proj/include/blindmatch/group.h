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

#ifndef BLINDMATCH_GROUP_H_
#define BLINDMATCH_GROUP_H_

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "blindmatch/bytes.h"
#include "blindmatch/random.h"

namespace blindmatch {

enum class GroupId : uint8_t {
  // NIST P-256, elements as 33-byte compressed points.
  kP256 = 1,
  // Quadratic residues modulo a fixed 256-bit safe prime. Test use.
  kSchnorr256 = 2,
};

const char* GroupName(GroupId id);
GroupId ParseGroupId(std::string_view name);

// Big-endian, reduced modulo the group order.
using Scalar = std::array<uint8_t, 32>;

// Canonical encoding of a group element. The identity has a reserved
// encoding that Decode() never accepts.
struct GroupElement {
  Bytes bytes;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// A prime-order cyclic group with a fixed generator g and a second generator
// h = HashToGroup("blindmatch/pedersen-h") whose discrete log base g is
// unknown. Immutable and thread-safe.
class Group {
 public:
  static std::shared_ptr<const Group> Create(GroupId id);
  virtual ~Group();

  virtual GroupId id() const = 0;
  virtual size_t element_size() const = 0;

  const GroupElement& g() const { return g_; }
  const GroupElement& h() const { return h_; }

  virtual GroupElement Exp(const GroupElement& base, const Scalar& s) const = 0;
  virtual GroupElement ExpG(const Scalar& s) const;
  virtual GroupElement Op(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement Inverse(const GroupElement& a) const = 0;
  GroupElement Div(const GroupElement& a, const GroupElement& b) const {
    return Op(a, Inverse(b));
  }
  // a^s * b^t
  GroupElement MultiExp(const GroupElement& a, const Scalar& s,
                        const GroupElement& b, const Scalar& t) const {
    return Op(Exp(a, s), Exp(b, t));
  }
  bool IsIdentity(const GroupElement& a) const;

  virtual GroupElement HashToGroup(std::string_view domain,
                                   std::span<const uint8_t> data) const = 0;
  // Accepts only canonical encodings of non-identity subgroup members.
  virtual std::optional<GroupElement> Decode(
      std::span<const uint8_t> bytes) const = 0;

  // Uniform in [1, order).
  Scalar RandomScalar(RandomSource& rng) const;
  // Reduces 64 bytes modulo the order.
  Scalar ScalarFromWide(std::span<const uint8_t, 64> wide) const;
  Scalar ScalarFromU64(uint64_t v) const;
  Scalar Add(const Scalar& a, const Scalar& b) const;
  Scalar Sub(const Scalar& a, const Scalar& b) const;
  Scalar Mul(const Scalar& a, const Scalar& b) const;
  Scalar Neg(const Scalar& a) const;
  bool IsCanonicalScalar(std::span<const uint8_t> bytes) const;

 protected:
  Group() = default;
  virtual const GroupElement& identity() const = 0;

  Scalar order_{};
  GroupElement g_;
  GroupElement h_;
};

using GroupPtr = std::shared_ptr<const Group>;

}  // namespace blindmatch

#endif  // BLINDMATCH_GROUP_H_
