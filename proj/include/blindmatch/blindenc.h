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

#ifndef BLINDMATCH_BLINDENC_H_
#define BLINDMATCH_BLINDENC_H_

#include <optional>
#include <vector>

#include "blindmatch/encrypted_profile.h"
#include "blindmatch/he.h"

namespace blindmatch {

// What the key holder sees for one profile entry kappa: omega blinded values
// kappa * r_i and omega candidates of which gamma are r_i^-1, the rest
// random units. Both lists are independently permuted.
struct BlindBatch {
  uint16_t slot = 0;
  std::vector<FieldElement> omega_list;
  std::vector<FieldElement> gamma_list;
};

// Kept by the requester. Permutations map a sent position k to the original
// position: sent[k] = original[perm[k]].
struct BlindSecrets {
  uint16_t slot = 0;
  std::vector<FieldElement> r;
  size_t gamma = 0;
  std::vector<uint32_t> omega_perm;
  std::vector<uint32_t> gamma_perm;
};

struct EncryptedBatchResponse {
  uint16_t slot = 0;
  std::vector<HeCiphertext> y_omega;
  std::vector<HeCiphertext> y_gamma;
  HeCiphertext zero;
};

// gamma is uniform in [ceil(omega / 2), omega] unless `forced_gamma` is set.
// Throws kInvalidArgument for kappa = 0 or omega < 2.
std::pair<BlindBatch, BlindSecrets> PrepareBatch(
    const FieldElement& kappa, uint16_t slot, size_t omega, RandomSource& rng,
    std::optional<size_t> forced_gamma = std::nullopt);

// Key-holder side. Encrypts element-wise in received order plus one
// encryption of zero.
EncryptedBatchResponse EncryptBatch(const HeContext& ctx,
                                    const BlindBatch& batch,
                                    const HeSecretKey& sk, RandomSource& rng);

// Undoes both permutations, picks a uniform pair index below gamma and
// returns Y_omega[t] * Y_gamma[t] + zero, an encryption of kappa.
// Throws kProtocolDesync on length or slot mismatch.
HeCiphertext ExtractBlinded(const HeContext& ctx,
                            const EncryptedBatchResponse& response,
                            const BlindSecrets& secrets,
                            const HeEvaluationKey& ek, RandomSource& rng);
// Same with a caller-chosen original position; for tests.
HeCiphertext ExtractAt(const HeContext& ctx,
                       const EncryptedBatchResponse& response,
                       const BlindSecrets& secrets, const HeEvaluationKey& ek,
                       size_t position);

struct ProfileBlinding {
  std::vector<BlindBatch> batches;
  std::vector<BlindSecrets> secrets;
};

// One batch per flattened entry, slots numbered 0..2t-1.
ProfileBlinding PrepareProfile(const DnaProfile& d, size_t omega,
                               RandomSource& rng);
EncryptedProfile ExtractProfile(
    const HeContext& ctx, const std::vector<EncryptedBatchResponse>& responses,
    const ProfileBlinding& blinding, const HeEvaluationKey& ek,
    RandomSource& rng);

// Runs both sides in process.
EncryptedProfile BlindEncryptProfile(const HeContext& ctx, const DnaProfile& d,
                                     const HeKeys& lab_keys, size_t omega,
                                     RandomSource& investigator_rng,
                                     RandomSource& lab_rng);

// Request: count u16, then per batch slot u16 | omega u16 | 2 omega u32.
Bytes SerializeBlindRequest(const std::vector<BlindBatch>& batches);
std::vector<BlindBatch> ParseBlindRequest(std::span<const uint8_t> data,
                                          const FieldParams& field,
                                          size_t max_batches);
// Response: count u16, then per batch slot u16 | omega u16 | 2 omega + 1
// ciphertexts each prefixed by a u32 length (zero last).
Bytes SerializeBlindResponse(const HeContext& ctx,
                             const std::vector<EncryptedBatchResponse>& rs);
std::vector<EncryptedBatchResponse> ParseBlindResponse(
    const HeContext& ctx, std::span<const uint8_t> data);

}  // namespace blindmatch

#endif  // BLINDMATCH_BLINDENC_H_
