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

#include "blindmatch/blindenc.h"

#include <string>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

std::vector<uint32_t> InversePermutation(const std::vector<uint32_t>& perm) {
  std::vector<uint32_t> inv(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<uint32_t>(k);
  return inv;
}

}  // namespace

std::pair<BlindBatch, BlindSecrets> PrepareBatch(
    const FieldElement& kappa, uint16_t slot, size_t omega, RandomSource& rng,
    std::optional<size_t> forced_gamma) {
  if (kappa.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument,
                "slot " + std::to_string(slot) + " holds zero, not a unit");
  }
  if (omega < 2 || omega > 0xffff) {
    throw Error(ErrorCode::kInvalidArgument, "omega must lie in [2, 65535]");
  }
  const FieldParams field(kappa.modulus());
  const size_t lo = (omega + 1) / 2;
  size_t gamma = forced_gamma ? *forced_gamma
                              : static_cast<size_t>(rng.UniformInRange(lo, omega));
  if (gamma < lo || gamma > omega) {
    throw Error(ErrorCode::kInvalidArgument, "gamma outside [ceil(omega/2), omega]");
  }

  BlindSecrets secrets;
  secrets.slot = slot;
  secrets.gamma = gamma;
  std::vector<FieldElement> omega_list, gamma_list;
  for (size_t i = 0; i < omega; ++i) {
    secrets.r.push_back(SampleUnit(field, rng));
  }
  for (size_t i = 0; i < gamma; ++i) gamma_list.push_back(Inv(secrets.r[i]));
  while (gamma_list.size() < omega) gamma_list.push_back(SampleUnit(field, rng));
  for (const FieldElement& r : secrets.r) omega_list.push_back(kappa * r);

  secrets.omega_perm = RandomPermutation(omega, rng);
  secrets.gamma_perm = RandomPermutation(omega, rng);
  BlindBatch batch;
  batch.slot = slot;
  for (size_t k = 0; k < omega; ++k) {
    batch.omega_list.push_back(omega_list[secrets.omega_perm[k]]);
    batch.gamma_list.push_back(gamma_list[secrets.gamma_perm[k]]);
  }
  return {std::move(batch), std::move(secrets)};
}

EncryptedBatchResponse EncryptBatch(const HeContext& ctx,
                                    const BlindBatch& batch,
                                    const HeSecretKey& sk, RandomSource& rng) {
  EncryptedBatchResponse out;
  out.slot = batch.slot;
  for (const auto& x : batch.omega_list) {
    out.y_omega.push_back(ctx.EncryptSymmetric(x, sk, rng));
  }
  for (const auto& x : batch.gamma_list) {
    out.y_gamma.push_back(ctx.EncryptSymmetric(x, sk, rng));
  }
  out.zero = ctx.EncryptSymmetric(FieldElement(0, ctx.field()), sk, rng);
  return out;
}

HeCiphertext ExtractAt(const HeContext& ctx,
                       const EncryptedBatchResponse& response,
                       const BlindSecrets& secrets, const HeEvaluationKey& ek,
                       size_t position) {
  const size_t omega = secrets.r.size();
  if (response.slot != secrets.slot || response.y_omega.size() != omega ||
      response.y_gamma.size() != omega) {
    throw Error(ErrorCode::kProtocolDesync,
                "blind response for slot " + std::to_string(response.slot) +
                    " does not match the request");
  }
  if (position >= omega) {
    throw Error(ErrorCode::kInvalidArgument, "position outside the batch");
  }
  const size_t k_omega = InversePermutation(secrets.omega_perm)[position];
  const size_t k_gamma = InversePermutation(secrets.gamma_perm)[position];
  HeCiphertext product =
      ctx.Mul(response.y_omega[k_omega], response.y_gamma[k_gamma], ek);
  return ctx.Add(product, response.zero);
}

HeCiphertext ExtractBlinded(const HeContext& ctx,
                            const EncryptedBatchResponse& response,
                            const BlindSecrets& secrets,
                            const HeEvaluationKey& ek, RandomSource& rng) {
  size_t t = static_cast<size_t>(rng.UniformBelow(secrets.gamma));
  return ExtractAt(ctx, response, secrets, ek, t);
}

ProfileBlinding PrepareProfile(const DnaProfile& d, size_t omega,
                               RandomSource& rng) {
  ProfileBlinding out;
  auto flat = Flatten(d);
  for (size_t j = 0; j < flat.size(); ++j) {
    auto [batch, secrets] =
        PrepareBatch(flat[j], static_cast<uint16_t>(j), omega, rng);
    out.batches.push_back(std::move(batch));
    out.secrets.push_back(std::move(secrets));
  }
  return out;
}

EncryptedProfile ExtractProfile(
    const HeContext& ctx, const std::vector<EncryptedBatchResponse>& responses,
    const ProfileBlinding& blinding, const HeEvaluationKey& ek,
    RandomSource& rng) {
  if (responses.size() != blinding.secrets.size()) {
    throw Error(ErrorCode::kProtocolDesync,
                "expected " + std::to_string(blinding.secrets.size()) +
                    " blind responses, got " + std::to_string(responses.size()));
  }
  std::vector<HeCiphertext> entries;
  for (size_t j = 0; j < responses.size(); ++j) {
    entries.push_back(
        ExtractBlinded(ctx, responses[j], blinding.secrets[j], ek, rng));
  }
  return EncryptedProfile(std::move(entries));
}

EncryptedProfile BlindEncryptProfile(const HeContext& ctx, const DnaProfile& d,
                                     const HeKeys& lab_keys, size_t omega,
                                     RandomSource& investigator_rng,
                                     RandomSource& lab_rng) {
  ProfileBlinding blinding = PrepareProfile(d, omega, investigator_rng);
  std::vector<EncryptedBatchResponse> responses;
  for (const auto& b : blinding.batches) {
    responses.push_back(EncryptBatch(ctx, b, lab_keys.secret_key, lab_rng));
  }
  return ExtractProfile(ctx, responses, blinding, lab_keys.evaluation_key,
                        investigator_rng);
}

Bytes SerializeBlindRequest(const std::vector<BlindBatch>& batches) {
  ByteWriter w;
  w.U16(static_cast<uint16_t>(batches.size()));
  for (const auto& b : batches) {
    w.U16(b.slot);
    w.U16(static_cast<uint16_t>(b.omega_list.size()));
    for (const auto& x : b.omega_list) w.U32(static_cast<uint32_t>(x.value()));
    for (const auto& x : b.gamma_list) w.U32(static_cast<uint32_t>(x.value()));
  }
  return w.Take();
}

std::vector<BlindBatch> ParseBlindRequest(std::span<const uint8_t> data,
                                          const FieldParams& field,
                                          size_t max_batches) {
  ByteReader r(data);
  size_t count = r.U16();
  if (count == 0 || count > max_batches) {
    throw Error(ErrorCode::kProtocol, "blind request has " +
                                          std::to_string(count) + " batches");
  }
  auto element = [&]() {
    uint32_t v = r.U32();
    if (v == 0 || v >= field.modulus()) {
      throw Error(ErrorCode::kProtocol, "blinded value outside Z*_p");
    }
    return FieldElement(v, field);
  };
  std::vector<BlindBatch> out(count);
  for (auto& b : out) {
    b.slot = r.U16();
    size_t omega = r.U16();
    if (omega < 2) throw Error(ErrorCode::kProtocol, "omega below 2");
    for (size_t i = 0; i < omega; ++i) b.omega_list.push_back(element());
    for (size_t i = 0; i < omega; ++i) b.gamma_list.push_back(element());
  }
  r.ExpectEnd();
  return out;
}

Bytes SerializeBlindResponse(const HeContext& ctx,
                             const std::vector<EncryptedBatchResponse>& rs) {
  ByteWriter w;
  w.U16(static_cast<uint16_t>(rs.size()));
  for (const auto& r : rs) {
    w.U16(r.slot);
    w.U16(static_cast<uint16_t>(r.y_omega.size()));
    for (const auto& c : r.y_omega) w.Blob(ctx.Serialize(c));
    for (const auto& c : r.y_gamma) w.Blob(ctx.Serialize(c));
    w.Blob(ctx.Serialize(r.zero));
  }
  return w.Take();
}

std::vector<EncryptedBatchResponse> ParseBlindResponse(
    const HeContext& ctx, std::span<const uint8_t> data) {
  ByteReader r(data);
  size_t count = r.U16();
  std::vector<EncryptedBatchResponse> out(count);
  for (auto& resp : out) {
    resp.slot = r.U16();
    size_t omega = r.U16();
    for (size_t i = 0; i < omega; ++i) {
      resp.y_omega.push_back(ctx.Deserialize(r.Blob()));
    }
    for (size_t i = 0; i < omega; ++i) {
      resp.y_gamma.push_back(ctx.Deserialize(r.Blob()));
    }
    resp.zero = ctx.Deserialize(r.Blob());
  }
  r.ExpectEnd();
  return out;
}

}  // namespace blindmatch
