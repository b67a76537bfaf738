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

"""Private DNA profile matching between an investigator and a lab."""

from ._blindmatch import (
    DEFAULT_MODULUS,
    Ciphertext,
    HeContext,
    BlindmatchError,
    field_add,
    field_inv,
    field_mul,
    format_database,
    generate_database,
    match_decision,
    oracle,
    parse_database,
    perturb,
    plaintext_distance,
    run_local,
)

__all__ = [
    "DEFAULT_MODULUS",
    "Ciphertext",
    "HeContext",
    "BlindmatchError",
    "field_add",
    "field_inv",
    "field_mul",
    "format_database",
    "generate_database",
    "match_decision",
    "oracle",
    "parse_database",
    "perturb",
    "plaintext_distance",
    "run_local",
]
