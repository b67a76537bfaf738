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

#include "blindmatch/zkp.h"

#include <set>
#include <string>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

constexpr uint32_t kMaxProofEntries = 1u << 20;

struct Statement {
  // Targets of the four Schnorr relations; bases alternate g, h.
  std::array<GroupElement, 4> y;
};

Statement MakeStatement(const Group& group, const GroupElement& key,
                        const GroupElement& anchor,
                        const GroupElement& commitment) {
  return {{group.Div(key, anchor), commitment, key,
           group.Div(commitment, group.g())}};
}

const GroupElement& Base(const Group& group, size_t k) {
  return k % 2 == 0 ? group.g() : group.h();
}

// base^z * y^(-c)
GroupElement Announcement(const Group& group, size_t k, const Scalar& z,
                          const GroupElement& y, const Scalar& c) {
  return group.MultiExp(Base(group, k), z, y, group.Neg(c));
}

Scalar Challenge(const Group& group, std::span<const uint8_t> sid,
                 const GroupElement& anchor,
                 const std::vector<GroupElement>& keys, size_t m,
                 const std::vector<GroupElement>& commitments,
                 const std::vector<std::array<GroupElement, 4>>& announcements) {
  TranscriptHash th("blindmatch/kofn-proof/v1");
  th.AbsorbU64(static_cast<uint64_t>(group.id()));
  th.Absorb(sid);
  th.Absorb(anchor.bytes);
  th.AbsorbU64(keys.size());
  th.AbsorbU64(m);
  for (const auto& k : keys) th.Absorb(k.bytes);
  for (const auto& c : commitments) th.Absorb(c.bytes);
  for (const auto& a : announcements) {
    for (const auto& e : a) th.Absorb(e.bytes);
  }
  auto wide = th.WideDigest();
  return group.ScalarFromWide(wide);
}

}  // namespace

GroupElement DeriveAnchor(const Group& group, std::span<const uint8_t> sid) {
  return group.HashToGroup("blindmatch/transfer-anchor", sid);
}

size_t KeyWitness::suspect_count() const {
  size_t m = 0;
  for (bool b : is_suspect) m += b ? 1 : 0;
  return m;
}

TransferKeySet BuildTransferKeys(const Group& group,
                                 const std::vector<uint32_t>& suspects,
                                 size_t n, const GroupElement& anchor,
                                 RandomSource& rng) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  if (suspects.size() > n) {
    throw Error(ErrorCode::kInvalidArgument, "more suspects than database entries");
  }
  TransferKeySet out;
  out.witness.is_suspect.assign(n, false);
  for (uint32_t s : suspects) {
    if (s < 1 || s > n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "suspect index " + std::to_string(s) + " outside 1.." +
                      std::to_string(n));
    }
    if (out.witness.is_suspect[s - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "suspect index " + std::to_string(s) + " repeated");
    }
    out.witness.is_suspect[s - 1] = true;
  }
  for (size_t i = 0; i < n; ++i) {
    Scalar secret = group.RandomScalar(rng);
    GroupElement gs = group.ExpG(secret);
    out.public_keys.push_back(out.witness.is_suspect[i] ? gs
                                                        : group.Op(anchor, gs));
    out.witness.secrets.push_back(secret);
  }
  return out;
}

KofNProof ProveKofN(const Group& group,
                    const std::vector<GroupElement>& public_keys,
                    const KeyWitness& witness, std::span<const uint8_t> sid,
                    RandomSource& rng) {
  const size_t n = public_keys.size();
  if (witness.is_suspect.size() != n || witness.secrets.size() != n) {
    throw Error(ErrorCode::kProver, "witness does not cover every key");
  }
  const GroupElement anchor = DeriveAnchor(group, sid);
  KofNProof proof;
  proof.entries.resize(n);
  std::vector<GroupElement> commitments(n);
  std::vector<std::array<GroupElement, 4>> announcements(n);
  // Per index: bit, commitment randomness, real nonces.
  std::vector<Scalar> rho(n), alpha(n), beta(n);
  std::vector<Scalar> sim_challenge(n);
  Scalar sum_rho{};

  for (size_t i = 0; i < n; ++i) {
    const bool b = witness.is_suspect[i];
    const Scalar& w = witness.secrets[i];
    GroupElement gw = group.ExpG(w);
    if (b ? !(gw == public_keys[i])
          : !(group.Op(anchor, gw) == public_keys[i])) {
      throw Error(ErrorCode::kProver,
                  "witness does not open key " + std::to_string(i + 1));
    }
    rho[i] = group.RandomScalar(rng);
    sum_rho = group.Add(sum_rho, rho[i]);
    GroupElement hr = group.Exp(group.h(), rho[i]);
    commitments[i] = b ? group.Op(group.g(), hr) : hr;
    Statement st = MakeStatement(group, public_keys[i], anchor, commitments[i]);

    const size_t real = b ? 2 : 0, sim = b ? 0 : 2;
    alpha[i] = group.RandomScalar(rng);
    beta[i] = group.RandomScalar(rng);
    announcements[i][real] = group.ExpG(alpha[i]);
    announcements[i][real + 1] = group.Exp(group.h(), beta[i]);

    auto& entry = proof.entries[i];
    sim_challenge[i] = group.RandomScalar(rng);
    entry.responses[sim] = group.RandomScalar(rng);
    entry.responses[sim + 1] = group.RandomScalar(rng);
    announcements[i][sim] = Announcement(group, sim, entry.responses[sim],
                                         st.y[sim], sim_challenge[i]);
    announcements[i][sim + 1] =
        Announcement(group, sim + 1, entry.responses[sim + 1], st.y[sim + 1],
                     sim_challenge[i]);
    entry.commitment = commitments[i];
  }

  const size_t m = witness.suspect_count();
  proof.challenge =
      Challenge(group, sid, anchor, public_keys, m, commitments, announcements);
  for (size_t i = 0; i < n; ++i) {
    const bool b = witness.is_suspect[i];
    const size_t real = b ? 2 : 0;
    auto& entry = proof.entries[i];
    Scalar real_challenge = group.Sub(proof.challenge, sim_challenge[i]);
    entry.challenge0 = b ? sim_challenge[i] : real_challenge;
    entry.responses[real] = group.Add(
        alpha[i], group.Mul(real_challenge, witness.secrets[i]));
    entry.responses[real + 1] =
        group.Add(beta[i], group.Mul(real_challenge, rho[i]));
  }
  proof.aggregate_randomness = sum_rho;
  return proof;
}

bool VerifyKofN(const Group& group,
                const std::vector<GroupElement>& public_keys, size_t m,
                std::span<const uint8_t> sid, const KofNProof& proof) {
  try {
    const size_t n = public_keys.size();
    if (n == 0 || proof.entries.size() != n || m > n) return false;
    for (const auto& k : public_keys) {
      if (!group.Decode(k.bytes)) return false;
    }
    const GroupElement anchor = DeriveAnchor(group, sid);
    std::vector<GroupElement> commitments(n);
    std::vector<std::array<GroupElement, 4>> announcements(n);
    GroupElement product = proof.entries[0].commitment;
    for (size_t i = 0; i < n; ++i) {
      const auto& entry = proof.entries[i];
      if (!group.Decode(entry.commitment.bytes)) return false;
      commitments[i] = entry.commitment;
      if (i > 0) product = group.Op(product, entry.commitment);
      Statement st = MakeStatement(group, public_keys[i], anchor, entry.commitment);
      const Scalar c1 = group.Sub(proof.challenge, entry.challenge0);
      for (size_t k = 0; k < 4; ++k) {
        announcements[i][k] = Announcement(group, k, entry.responses[k],
                                           st.y[k], k < 2 ? entry.challenge0 : c1);
      }
    }
    Scalar e = Challenge(group, sid, anchor, public_keys, m, commitments,
                         announcements);
    if (e != proof.challenge) return false;
    GroupElement opening =
        group.MultiExp(group.g(), group.ScalarFromU64(m), group.h(),
                       proof.aggregate_randomness);
    return opening == product;
  } catch (const std::exception&) {
    return false;
  }
}

bool VerifyKofN(const Group& group,
                const std::vector<GroupElement>& public_keys, size_t m,
                std::span<const uint8_t> sid,
                std::span<const uint8_t> proof_bytes) {
  auto proof = ParseProof(group, proof_bytes);
  return proof && VerifyKofN(group, public_keys, m, sid, *proof);
}

Bytes SerializeProof(const Group& group, const KofNProof& proof) {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(group.id()));
  w.U32(static_cast<uint32_t>(proof.entries.size()));
  w.Blob(proof.challenge);
  for (const auto& e : proof.entries) {
    w.Blob(e.commitment.bytes);
    w.Blob(e.challenge0);
    for (const auto& z : e.responses) w.Blob(z);
  }
  w.Blob(proof.aggregate_randomness);
  return w.Take();
}

std::optional<KofNProof> ParseProof(const Group& group,
                                    std::span<const uint8_t> data) {
  try {
    ByteReader r(data);
    auto scalar = [&](Scalar& out) {
      auto raw = r.Blob(32);
      if (!group.IsCanonicalScalar(raw)) {
        throw Error(ErrorCode::kProtocol, "non-canonical scalar");
      }
      std::copy(raw.begin(), raw.end(), out.begin());
    };
    if (r.U8() != static_cast<uint8_t>(group.id())) return std::nullopt;
    uint32_t n = r.U32();
    if (n == 0 || n > kMaxProofEntries) return std::nullopt;
    KofNProof proof;
    scalar(proof.challenge);
    proof.entries.resize(n);
    for (auto& e : proof.entries) {
      auto raw = r.Blob(group.element_size());
      auto element = group.Decode(raw);
      if (!element) return std::nullopt;
      e.commitment = *element;
      scalar(e.challenge0);
      for (auto& z : e.responses) scalar(z);
    }
    scalar(proof.aggregate_randomness);
    r.ExpectEnd();
    return proof;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace blindmatch
