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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "blindmatch/random.h"

namespace blindmatch {
namespace {

using boost::multiprecision::cpp_int;

cpp_int ToInt(const Scalar& s) {
  cpp_int v = 0;
  for (uint8_t b : s) v = (v << 8) | b;
  return v;
}

class GroupTest : public ::testing::TestWithParam<GroupId> {
 protected:
  void SetUp() override { group_ = Group::Create(GetParam()); }
  GroupPtr group_;
  RandomSource rng_ = RandomSource::FromSeed(5, "group-test");
};

TEST_P(GroupTest, ExponentLaws) {
  const Group& g = *group_;
  for (int i = 0; i < 50; ++i) {
    Scalar a = g.RandomScalar(rng_), b = g.RandomScalar(rng_);
    EXPECT_EQ(g.Op(g.ExpG(a), g.ExpG(b)), g.ExpG(g.Add(a, b)));
    EXPECT_EQ(g.Exp(g.ExpG(a), b), g.ExpG(g.Mul(a, b)));
    EXPECT_EQ(g.Div(g.ExpG(a), g.ExpG(b)), g.ExpG(g.Sub(a, b)));
    EXPECT_EQ(g.MultiExp(g.g(), a, g.h(), b), g.Op(g.ExpG(a), g.Exp(g.h(), b)));
    EXPECT_TRUE(g.IsIdentity(g.Op(g.ExpG(a), g.ExpG(g.Neg(a)))));
    EXPECT_EQ(g.ExpG(a), g.Exp(g.g(), a));
  }
  EXPECT_EQ(g.ExpG(g.ScalarFromU64(1)), g.g());
}

TEST_P(GroupTest, ScalarArithmeticMatchesBigIntegers) {
  const Group& g = *group_;
  // Recover the order as 0 - 1 + 1.
  cpp_int order = ToInt(g.Neg(g.ScalarFromU64(1))) + 1;
  for (int i = 0; i < 200; ++i) {
    Scalar a = g.RandomScalar(rng_), b = g.RandomScalar(rng_);
    cpp_int x = ToInt(a), y = ToInt(b);
    ASSERT_LT(x, order);
    ASSERT_GE(x, 1);
    EXPECT_EQ(ToInt(g.Add(a, b)), (x + y) % order);
    EXPECT_EQ(ToInt(g.Sub(a, b)), (x - y + order) % order);
    EXPECT_EQ(ToInt(g.Mul(a, b)), (x * y) % order);
    std::array<uint8_t, 64> wide;
    rng_.Fill(wide);
    cpp_int w = 0;
    for (uint8_t byte : wide) w = (w << 8) | byte;
    EXPECT_EQ(ToInt(g.ScalarFromWide(wide)), w % order);
  }
  Scalar max{};
  max.fill(0xff);
  EXPECT_FALSE(g.IsCanonicalScalar(max));
  EXPECT_TRUE(g.IsCanonicalScalar(g.ScalarFromU64(7)));
  EXPECT_FALSE(g.IsCanonicalScalar(std::span(max).first(31)));
}

TEST_P(GroupTest, DecodeAcceptsOnlyCanonicalMembers) {
  const Group& g = *group_;
  GroupElement x = g.ExpG(g.RandomScalar(rng_));
  ASSERT_EQ(x.bytes.size(), g.element_size());
  auto back = g.Decode(x.bytes);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, x);
  GroupElement identity = g.Op(x, g.Inverse(x));
  EXPECT_FALSE(g.Decode(identity.bytes).has_value());
  EXPECT_FALSE(g.Decode({}).has_value());
  Bytes longer = x.bytes;
  longer.push_back(0);
  EXPECT_FALSE(g.Decode(longer).has_value());
  Bytes garbage(g.element_size(), 0xff);
  EXPECT_FALSE(g.Decode(garbage).has_value());
  // Random strings rarely decode, and never to non-members.
  for (int i = 0; i < 200; ++i) {
    Bytes r(g.element_size());
    rng_.Fill(r);
    if (auto d = g.Decode(r)) {
      EXPECT_EQ(g.Decode(d->bytes), d);
    }
  }
}

TEST_P(GroupTest, HashToGroupIsDeterministicAndDomainSeparated) {
  const Group& g = *group_;
  const uint8_t a[] = {1, 2, 3};
  const uint8_t b[] = {1, 2, 4};
  EXPECT_EQ(g.HashToGroup("d", a), g.HashToGroup("d", a));
  EXPECT_NE(g.HashToGroup("d", a), g.HashToGroup("d", b));
  EXPECT_NE(g.HashToGroup("d", a), g.HashToGroup("e", a));
  EXPECT_TRUE(g.Decode(g.HashToGroup("d", a).bytes).has_value());
  EXPECT_NE(g.g(), g.h());
  EXPECT_TRUE(g.Decode(g.h().bytes).has_value());
}

INSTANTIATE_TEST_SUITE_P(Groups, GroupTest,
                         ::testing::Values(GroupId::kP256, GroupId::kSchnorr256),
                         [](const auto& info) { return std::string(GroupName(info.param)); });

TEST(GroupNames, ParseRoundTrip) {
  EXPECT_EQ(ParseGroupId("p256"), GroupId::kP256);
  EXPECT_EQ(ParseGroupId("schnorr256"), GroupId::kSchnorr256);
  EXPECT_ANY_THROW(ParseGroupId("rsa"));
}

}  // namespace
}  // namespace blindmatch
