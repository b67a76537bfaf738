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

#include "blindmatch/group.h"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <cstring>
#include <string>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

struct BnDeleter {
  void operator()(BIGNUM* b) const { BN_free(b); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct PointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

void Check(int ok, const char* what) {
  if (ok != 1) throw Error(ErrorCode::kInvalidArgument, std::string("group: ") + what);
}

BnPtr NewBn() {
  BnPtr b(BN_new());
  if (!b) throw std::bad_alloc();
  return b;
}

BnCtxPtr NewCtx() {
  BnCtxPtr c(BN_CTX_new());
  if (!c) throw std::bad_alloc();
  return c;
}

BnPtr FromBytes(std::span<const uint8_t> bytes) {
  BnPtr b(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  if (!b) throw std::bad_alloc();
  return b;
}

Scalar ToScalar(const BIGNUM* b) {
  Scalar s{};
  Check(BN_bn2binpad(b, s.data(), 32) == 32 ? 1 : 0, "scalar overflow");
  return s;
}

Bytes ToFixed(const BIGNUM* b, size_t width) {
  Bytes out(width);
  Check(BN_bn2binpad(b, out.data(), static_cast<int>(width)) ==
                static_cast<int>(width)
            ? 1
            : 0,
        "element overflow");
  return out;
}

Bytes HashWithCounter(std::string_view domain, std::span<const uint8_t> data,
                      uint32_t counter, uint8_t lane) {
  ByteWriter w;
  w.Blob(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(domain.data()), domain.size()));
  w.Blob(data);
  w.U32(counter);
  w.U8(lane);
  auto d = Sha256(w.bytes());
  return Bytes(d.begin(), d.end());
}

class P256Group : public Group {
 public:
  P256Group() {
    grp_ = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
    if (!grp_) throw std::bad_alloc();
    auto ctx = NewCtx();
    order_ = ToScalar(EC_GROUP_get0_order(grp_));
    g_ = Encode(EC_GROUP_get0_generator(grp_), ctx.get());
    identity_.bytes = {0x00};
    h_ = HashToGroup("blindmatch/pedersen-h", {});
  }
  ~P256Group() override { EC_GROUP_free(grp_); }

  GroupId id() const override { return GroupId::kP256; }
  size_t element_size() const override { return 33; }

  GroupElement Exp(const GroupElement& base, const Scalar& s) const override {
    auto ctx = NewCtx();
    PointPtr p = Load(base, ctx.get());
    BnPtr k = FromBytes(s);
    PointPtr r(EC_POINT_new(grp_));
    Check(EC_POINT_mul(grp_, r.get(), nullptr, p.get(), k.get(), ctx.get()),
          "point multiplication");
    return Encode(r.get(), ctx.get());
  }

  GroupElement ExpG(const Scalar& s) const override {
    auto ctx = NewCtx();
    BnPtr k = FromBytes(s);
    PointPtr r(EC_POINT_new(grp_));
    Check(EC_POINT_mul(grp_, r.get(), k.get(), nullptr, nullptr, ctx.get()),
          "base multiplication");
    return Encode(r.get(), ctx.get());
  }

  GroupElement Op(const GroupElement& a, const GroupElement& b) const override {
    auto ctx = NewCtx();
    PointPtr pa = Load(a, ctx.get()), pb = Load(b, ctx.get());
    PointPtr r(EC_POINT_new(grp_));
    Check(EC_POINT_add(grp_, r.get(), pa.get(), pb.get(), ctx.get()),
          "point addition");
    return Encode(r.get(), ctx.get());
  }

  GroupElement Inverse(const GroupElement& a) const override {
    auto ctx = NewCtx();
    PointPtr p = Load(a, ctx.get());
    Check(EC_POINT_invert(grp_, p.get(), ctx.get()), "point inversion");
    return Encode(p.get(), ctx.get());
  }

  GroupElement HashToGroup(std::string_view domain,
                           std::span<const uint8_t> data) const override {
    // Try-and-increment on the x coordinate.
    for (uint32_t counter = 0;; ++counter) {
      Bytes x = HashWithCounter(domain, data, counter, 0);
      Bytes candidate(33);
      candidate[0] = 0x02 | (HashWithCounter(domain, data, counter, 1)[0] & 1);
      std::memcpy(candidate.data() + 1, x.data(), 32);
      if (auto e = Decode(candidate)) return *e;
    }
  }

  std::optional<GroupElement> Decode(
      std::span<const uint8_t> bytes) const override {
    if (bytes.size() != 33 || (bytes[0] != 0x02 && bytes[0] != 0x03)) {
      return std::nullopt;
    }
    auto ctx = NewCtx();
    PointPtr p(EC_POINT_new(grp_));
    if (EC_POINT_oct2point(grp_, p.get(), bytes.data(), bytes.size(),
                           ctx.get()) != 1 ||
        EC_POINT_is_at_infinity(grp_, p.get())) {
      return std::nullopt;
    }
    GroupElement e = Encode(p.get(), ctx.get());
    if (!std::equal(e.bytes.begin(), e.bytes.end(), bytes.begin())) {
      return std::nullopt;
    }
    return e;
  }

 protected:
  const GroupElement& identity() const override { return identity_; }

 private:
  GroupElement Encode(const EC_POINT* p, BN_CTX* ctx) const {
    if (EC_POINT_is_at_infinity(grp_, p)) return identity_;
    GroupElement e;
    e.bytes.resize(33);
    Check(EC_POINT_point2oct(grp_, p, POINT_CONVERSION_COMPRESSED,
                             e.bytes.data(), 33, ctx) == 33
              ? 1
              : 0,
          "point encoding");
    return e;
  }

  PointPtr Load(const GroupElement& e, BN_CTX* ctx) const {
    PointPtr p(EC_POINT_new(grp_));
    if (e.bytes == identity_.bytes) {
      Check(EC_POINT_set_to_infinity(grp_, p.get()), "identity");
    } else {
      Check(EC_POINT_oct2point(grp_, p.get(), e.bytes.data(), e.bytes.size(),
                               ctx),
            "invalid point encoding");
    }
    return p;
  }

  EC_GROUP* grp_;
  GroupElement identity_;
};

// Safe prime P = 2Q + 1 with Q prime; the group is the order-Q subgroup of
// quadratic residues, generated by 4.
constexpr char kSafePrimeHex[] =
    "C8E25F418DE877B0528B42B9171F705E2C5EA9B11AA56C4220E3C6501DBE7ADB";

class SchnorrGroup : public Group {
 public:
  SchnorrGroup() {
    BIGNUM* p = nullptr;
    Check(BN_hex2bn(&p, kSafePrimeHex) > 0 ? 1 : 0, "modulus");
    p_.reset(p);
    BnPtr q = NewBn();
    Check(BN_rshift1(q.get(), p_.get()), "order");
    order_ = ToScalar(q.get());
    BnPtr four = NewBn();
    Check(BN_set_word(four.get(), 4), "generator");
    g_.bytes = ToFixed(four.get(), 32);
    BnPtr one = NewBn();
    Check(BN_one(one.get()), "identity");
    identity_.bytes = ToFixed(one.get(), 32);
    h_ = HashToGroup("blindmatch/pedersen-h", {});
  }

  GroupId id() const override { return GroupId::kSchnorr256; }
  size_t element_size() const override { return 32; }

  GroupElement Exp(const GroupElement& base, const Scalar& s) const override {
    auto ctx = NewCtx();
    BnPtr b = FromBytes(base.bytes), e = FromBytes(s), r = NewBn();
    Check(BN_mod_exp(r.get(), b.get(), e.get(), p_.get(), ctx.get()),
          "modular exponentiation");
    return {ToFixed(r.get(), 32)};
  }

  GroupElement Op(const GroupElement& a, const GroupElement& b) const override {
    auto ctx = NewCtx();
    BnPtr x = FromBytes(a.bytes), y = FromBytes(b.bytes), r = NewBn();
    Check(BN_mod_mul(r.get(), x.get(), y.get(), p_.get(), ctx.get()),
          "modular multiplication");
    return {ToFixed(r.get(), 32)};
  }

  GroupElement Inverse(const GroupElement& a) const override {
    auto ctx = NewCtx();
    BnPtr x = FromBytes(a.bytes), r = NewBn();
    if (!BN_mod_inverse(r.get(), x.get(), p_.get(), ctx.get())) {
      throw Error(ErrorCode::kNonInvertible, "group: element not invertible");
    }
    return {ToFixed(r.get(), 32)};
  }

  GroupElement HashToGroup(std::string_view domain,
                           std::span<const uint8_t> data) const override {
    auto ctx = NewCtx();
    for (uint32_t counter = 0;; ++counter) {
      Bytes wide = HashWithCounter(domain, data, counter, 0);
      Bytes second = HashWithCounter(domain, data, counter, 1);
      wide.insert(wide.end(), second.begin(), second.end());
      BnPtr x = FromBytes(wide), r = NewBn();
      Check(BN_nnmod(x.get(), x.get(), p_.get(), ctx.get()), "reduction");
      Check(BN_mod_sqr(r.get(), x.get(), p_.get(), ctx.get()), "square");
      if (BN_is_zero(r.get()) || BN_is_one(r.get())) continue;
      return {ToFixed(r.get(), 32)};
    }
  }

  std::optional<GroupElement> Decode(
      std::span<const uint8_t> bytes) const override {
    if (bytes.size() != 32) return std::nullopt;
    BnPtr x = FromBytes(bytes);
    if (BN_is_zero(x.get()) || BN_is_one(x.get()) ||
        BN_cmp(x.get(), p_.get()) >= 0) {
      return std::nullopt;
    }
    auto ctx = NewCtx();
    BnPtr q = FromBytes(order_), r = NewBn();
    Check(BN_mod_exp(r.get(), x.get(), q.get(), p_.get(), ctx.get()),
          "membership");
    if (!BN_is_one(r.get())) return std::nullopt;
    return GroupElement{Bytes(bytes.begin(), bytes.end())};
  }

 protected:
  const GroupElement& identity() const override { return identity_; }

 private:
  BnPtr p_;
  GroupElement identity_;
};

}  // namespace

const char* GroupName(GroupId id) {
  switch (id) {
    case GroupId::kP256: return "p256";
    case GroupId::kSchnorr256: return "schnorr256";
  }
  return "unknown";
}

GroupId ParseGroupId(std::string_view name) {
  if (name == "p256") return GroupId::kP256;
  if (name == "schnorr256") return GroupId::kSchnorr256;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown group '" + std::string(name) + "'");
}

std::shared_ptr<const Group> Group::Create(GroupId id) {
  switch (id) {
    case GroupId::kP256: return std::make_shared<P256Group>();
    case GroupId::kSchnorr256: return std::make_shared<SchnorrGroup>();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown group id");
}

Group::~Group() = default;

GroupElement Group::ExpG(const Scalar& s) const { return Exp(g_, s); }

bool Group::IsIdentity(const GroupElement& a) const { return a == identity(); }

Scalar Group::RandomScalar(RandomSource& rng) const {
  BnPtr order = FromBytes(order_);
  const int bits = BN_num_bits(order.get());
  const uint8_t top_mask =
      bits % 8 == 0 ? 0xff : static_cast<uint8_t>((1u << (bits % 8)) - 1);
  const size_t skip = 32 - (bits + 7) / 8;
  for (;;) {
    Scalar s{};
    rng.Fill(std::span<uint8_t>(s.data() + skip, 32 - skip));
    s[skip] &= top_mask;
    BnPtr v = FromBytes(s);
    if (!BN_is_zero(v.get()) && BN_cmp(v.get(), order.get()) < 0) return s;
  }
}

Scalar Group::ScalarFromWide(std::span<const uint8_t, 64> wide) const {
  auto ctx = NewCtx();
  BnPtr v = FromBytes(wide), order = FromBytes(order_);
  Check(BN_nnmod(v.get(), v.get(), order.get(), ctx.get()), "reduction");
  return ToScalar(v.get());
}

Scalar Group::ScalarFromU64(uint64_t v) const {
  BnPtr b = NewBn();
  Check(BN_set_word(b.get(), v), "scalar");
  auto ctx = NewCtx();
  BnPtr order = FromBytes(order_);
  Check(BN_nnmod(b.get(), b.get(), order.get(), ctx.get()), "reduction");
  return ToScalar(b.get());
}

namespace {
template <typename F>
Scalar ScalarOp(const Scalar& order_bytes, const Scalar& a, const Scalar& b,
                F op) {
  auto ctx = NewCtx();
  BnPtr x = FromBytes(a), y = FromBytes(b), r = NewBn(),
        order = FromBytes(order_bytes);
  Check(op(r.get(), x.get(), y.get(), order.get(), ctx.get()), "scalar op");
  return ToScalar(r.get());
}
}  // namespace

Scalar Group::Add(const Scalar& a, const Scalar& b) const {
  return ScalarOp(order_, a, b, BN_mod_add);
}
Scalar Group::Sub(const Scalar& a, const Scalar& b) const {
  return ScalarOp(order_, a, b, BN_mod_sub);
}
Scalar Group::Mul(const Scalar& a, const Scalar& b) const {
  return ScalarOp(order_, a, b, BN_mod_mul);
}
Scalar Group::Neg(const Scalar& a) const { return Sub(Scalar{}, a); }

bool Group::IsCanonicalScalar(std::span<const uint8_t> bytes) const {
  if (bytes.size() != 32) return false;
  return std::memcmp(bytes.data(), order_.data(), 32) < 0;
}

}  // namespace blindmatch
