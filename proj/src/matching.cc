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

#include "blindmatch/matching.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "blindmatch/error.h"

namespace blindmatch {

HeCiphertext EncryptedDistance(const HeContext& ctx, const EncryptedProfile& a,
                               const EncryptedProfile& b,
                               const HePublicKey& pk,
                               const HeEvaluationKey& ek, RandomSource& rng) {
  if (a.slot_count() != b.slot_count()) {
    throw Error(ErrorCode::kShape, "profiles differ in slot count");
  }
  HeCiphertext delta = ctx.EncryptZero(pk, rng);
  for (size_t j = 0; j < a.slot_count(); ++j) {
    HeCiphertext d_eta = ctx.Sub(a.fragment_size(j), b.fragment_size(j));
    HeCiphertext d_sigma = ctx.Sub(a.amplitude(j), b.amplitude(j));
    HeCiphertext sq_eta = ctx.Mul(d_eta, d_eta, ek);
    HeCiphertext sq_sigma = ctx.Mul(d_sigma, d_sigma, ek);
    delta = ctx.Add(delta, ctx.Mul(sq_eta, sq_sigma, ek));
  }
  return delta;
}

DistanceVector EncryptedDistances(
    const HeContext& ctx, const std::map<uint32_t, EncryptedProfile>& suspects,
    const EncryptedProfile& crime, const HePublicKey& pk,
    const HeEvaluationKey& ek, RandomSource& rng) {
  std::vector<uint32_t> order;
  for (const auto& [index, profile] : suspects) order.push_back(index);
  auto perm = RandomPermutation(order.size(), rng);
  DistanceVector out;
  for (uint32_t k : perm) {
    const uint32_t index = order[k];
    try {
      out.distances.push_back(
          EncryptedDistance(ctx, suspects.at(index), crime, pk, ek, rng));
    } catch (const Error& e) {
      throw Error(e.code(), "distance for suspect " + std::to_string(index) +
                                ": " + e.what());
    }
    out.position_to_suspect.push_back(index);
  }
  return out;
}

ThresholdOutcome ThresholdMatch(const HeContext& ctx,
                                const std::vector<HeCiphertext>& distances,
                                const MatchThreshold& tau,
                                const HeSecretKey& sk) {
  ThresholdOutcome out;
  for (size_t i = 0; i < distances.size(); ++i) {
    const auto position = static_cast<uint16_t>(i + 1);
    try {
      FieldElement delta = ctx.Decrypt(distances[i], sk);
      out.deltas.push_back(delta.value());
      if (MatchDecision(delta, tau)) out.positions.push_back(position);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDecryptionFailure &&
          e.code() != ErrorCode::kParameterMismatch) {
        throw;
      }
      out.partial = true;
      out.failed_positions.push_back(position);
      out.deltas.push_back(std::nullopt);
    }
  }
  return out;
}

std::vector<uint32_t> Resolve(const std::vector<uint16_t>& positions,
                              const std::vector<uint32_t>& position_to_suspect) {
  std::vector<uint32_t> out;
  for (uint16_t p : positions) {
    if (p < 1 || p > position_to_suspect.size()) {
      throw Error(ErrorCode::kProtocolDesync,
                  "match position " + std::to_string(p) + " is unknown");
    }
    out.push_back(position_to_suspect[p - 1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Bytes SerializeMatchRequest(const HeContext& ctx,
                            const std::vector<HeCiphertext>& distances,
                            double tau) {
  ByteWriter w;
  w.U16(static_cast<uint16_t>(distances.size()));
  w.F64(tau);
  for (const auto& c : distances) w.Blob(ctx.Serialize(c));
  return w.Take();
}

std::pair<std::vector<HeCiphertext>, MatchThreshold> ParseMatchRequest(
    const HeContext& ctx, std::span<const uint8_t> data) {
  ByteReader r(data);
  size_t m = r.U16();
  double tau = r.F64();
  if (!std::isfinite(tau) || tau < 0) {
    throw Error(ErrorCode::kProtocol, "match threshold must be finite and >= 0");
  }
  std::vector<HeCiphertext> distances;
  for (size_t i = 0; i < m; ++i) distances.push_back(ctx.Deserialize(r.Blob()));
  r.ExpectEnd();
  return {std::move(distances), MatchThreshold(tau)};
}

Bytes SerializeMatchResponse(const ThresholdOutcome& outcome) {
  ByteWriter w;
  w.U16(static_cast<uint16_t>(outcome.positions.size()));
  for (uint16_t p : outcome.positions) w.U16(p);
  w.U8(outcome.partial ? 1 : 0);
  return w.Take();
}

ThresholdOutcome ParseMatchResponse(std::span<const uint8_t> data, size_t m) {
  ByteReader r(data);
  ThresholdOutcome out;
  size_t count = r.U16();
  if (count > m) {
    throw Error(ErrorCode::kProtocolDesync, "more matches than distances");
  }
  for (size_t i = 0; i < count; ++i) out.positions.push_back(r.U16());
  uint8_t partial = r.U8();
  if (partial > 1) throw Error(ErrorCode::kProtocol, "invalid partial flag");
  out.partial = partial == 1;
  r.ExpectEnd();
  return out;
}

}  // namespace blindmatch
