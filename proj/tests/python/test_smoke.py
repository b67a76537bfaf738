# Copyright 2026 The BlindMatch Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import blindmatch as pm

P = pm.DEFAULT_MODULUS


def test_field_ops():
    assert pm.field_add(P - 1, 2) == 1
    assert pm.field_mul(256, 256) == 65536
    assert pm.field_mul(pm.field_inv(3), 3) == 1
    with pytest.raises(pm.BlindmatchError) as info:
        pm.field_inv(0)
    assert info.value.code == "non-invertible"


def test_distance_and_decision():
    a = [(3, 5), (1, 1)]
    b = [(1, 2), (1, 7)]
    assert pm.plaintext_distance(a, b) == 4 * 9
    assert pm.match_decision(15, 2.0)
    assert not pm.match_decision(16, 2.0)


def test_database_round_trip():
    db = pm.generate_database(t=4, n=6, range_bound=8, seed=3)
    assert len(db) == 6 and all(len(row) == 4 for row in db)
    assert all(1 <= v <= 8 for row in db for pair in row for v in pair)
    parsed, p = pm.parse_database(pm.format_database(db))
    assert parsed == db and p == P
    assert pm.generate_database(t=4, n=6, seed=3) == db


@pytest.mark.parametrize("backend", ["transparent", "reference"])
def test_homomorphic_context(backend):
    ctx = pm.HeContext(backend=backend, seed=5)
    a, b = ctx.encrypt(300), ctx.encrypt(7)
    assert ctx.decrypt(ctx.add(a, b)) == 307
    assert ctx.decrypt(ctx.sub(b, a)) == (7 - 300) % P
    prod = ctx.mul(a, b)
    assert ctx.decrypt(prod) == 2100
    assert prod.depth == 1
    assert ctx.decrypt(ctx.deserialize(ctx.serialize(prod))) == 2100
    if backend == "reference":
        assert ctx.noise_budget(prod) > 0


def test_encrypted_distance_matches_plaintext():
    ctx = pm.HeContext(backend="transparent")
    a = pm.generate_database(t=5, n=1, seed=1)[0]
    b = pm.perturb(a, max_delta=2, range_bound=8, seed=2)
    assert ctx.encrypted_distance(a, b) == pm.plaintext_distance(a, b)


def test_run_local_agrees_with_oracle():
    t = 10
    db = pm.generate_database(t=t, n=12, seed=9)
    crime = pm.perturb(db[2], max_delta=1, range_bound=8, seed=10)
    tau = t ** 0.25 + 0.5
    suspects = [1, 3, 6, 8]
    result = pm.run_local(db, suspects, crime, tau, backend="transparent", seed=4)
    expected = [row["suspect"] for row in pm.oracle(db, suspects, crime, tau) if row["match"]]
    assert result["matched"] == expected
    assert 3 in result["matched"]
    assert result["lab_completed"] and not result["partial"]
    assert set(result["timings_ms"]) >= {"ot_key_generation", "find_match"}
    assert all(v >= 0 and math.isfinite(v) for v in result["timings_ms"].values())


def test_errors_carry_codes():
    db = pm.generate_database(t=2, n=3, seed=1)
    with pytest.raises(pm.BlindmatchError):
        pm.run_local(db, [7], db[0], 1.0)
    with pytest.raises(pm.BlindmatchError) as info:
        pm.HeContext(backend="paillier")
    assert info.value.code == "invalid-argument"
