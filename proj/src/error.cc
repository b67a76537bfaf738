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

#include "blindmatch/error.h"

namespace blindmatch {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParameterMismatch: return "parameter-mismatch";
    case ErrorCode::kNonInvertible: return "non-invertible";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kDepthExhausted: return "depth-exhausted";
    case ErrorCode::kDecryptionFailure: return "decryption-failure";
    case ErrorCode::kProver: return "prover";
    case ErrorCode::kAuthenticationFailure: return "authentication-failure";
    case ErrorCode::kMissingWitness: return "missing-witness";
    case ErrorCode::kProtocolDesync: return "protocol-desync";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kOtAbort: return "ot-abort";
    case ErrorCode::kVerificationFailure: return "verification-failure";
    case ErrorCode::kConfigMismatch: return "config-mismatch";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kTransportClosed: return "transport-closed";
  }
  return "unknown";
}

}  // namespace blindmatch
