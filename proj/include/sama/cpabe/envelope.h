/*
 * Copyright 2026 The SAMA Authors.
 *
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


#ifndef SAMA_CPABE_ENVELOPE_H_
#define SAMA_CPABE_ENVELOPE_H_

// Symmetric plumbing for the hybrid ABE construction: SHA-256 and
// AES-256-GCM, both from OpenSSL.

#include <cstddef>
#include <cstdint>
#include <span>

#include "sama/common/bytes.h"
#include "sama/common/rng.h"

namespace sama::cpabe {

inline constexpr std::size_t kSymmetricKeyBytes = 32;
inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kTagBytes = 16;

Bytes Sha256(std::span<const std::uint8_t> data);

// nonce || ciphertext || tag. `aad` is authenticated, not encrypted.
Bytes Seal(std::span<const std::uint8_t> key,
           std::span<const std::uint8_t> plaintext,
           std::span<const std::uint8_t> aad, Rng& rng);

// Throws kIntegrityError when the tag does not verify or the box is short.
Bytes Open(std::span<const std::uint8_t> key, std::span<const std::uint8_t> box,
           std::span<const std::uint8_t> aad);

}  // namespace sama::cpabe

#endif  // SAMA_CPABE_ENVELOPE_H_
