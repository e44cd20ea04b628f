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


#include "sama/cpabe/envelope.h"

#include <memory>

#include <openssl/evp.h>
#include <openssl/sha.h>

#include "sama/common/errors.h"

namespace sama::cpabe {
namespace {

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxFree>;

void CheckKey(std::span<const std::uint8_t> key) {
  if (key.size() != kSymmetricKeyBytes) {
    throw Error(ErrorCode::kInvalidArgument, "AES-256-GCM needs a 32-byte key");
  }
}

[[noreturn]] void OpenSslFailure(const char* what) {
  throw Error(ErrorCode::kInvalidArgument, std::string("openssl: ") + what);
}

}  // namespace

Bytes Sha256(std::span<const std::uint8_t> data) {
  Bytes out(SHA256_DIGEST_LENGTH);
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Bytes Seal(std::span<const std::uint8_t> key,
           std::span<const std::uint8_t> plaintext,
           std::span<const std::uint8_t> aad, Rng& rng) {
  CheckKey(key);
  Bytes box(kNonceBytes + plaintext.size() + kTagBytes);
  rng.Fill(std::span(box.data(), kNonceBytes));
  CtxPtr ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         box.data()) != 1) {
    OpenSslFailure("encrypt init");
  }
  if (!aad.empty() &&
      EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                        static_cast<int>(aad.size())) != 1) {
    OpenSslFailure("aad");
  }
  std::uint8_t* out = box.data() + kNonceBytes;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out, &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1) {
    OpenSslFailure("encrypt");
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out + plaintext.size(), &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes,
                          out + plaintext.size()) != 1) {
    OpenSslFailure("finalize");
  }
  return box;
}

Bytes Open(std::span<const std::uint8_t> key, std::span<const std::uint8_t> box,
           std::span<const std::uint8_t> aad) {
  CheckKey(key);
  if (box.size() < kNonceBytes + kTagBytes) {
    throw Error(ErrorCode::kIntegrityError, "sealed box too short");
  }
  const std::size_t body = box.size() - kNonceBytes - kTagBytes;
  Bytes plain(body);
  CtxPtr ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (!ctx ||
      EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(),
                         box.data()) != 1) {
    OpenSslFailure("decrypt init");
  }
  if (!aad.empty() &&
      EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                        static_cast<int>(aad.size())) != 1) {
    OpenSslFailure("aad");
  }
  if (body > 0 &&
      EVP_DecryptUpdate(ctx.get(), plain.data(), &len, box.data() + kNonceBytes,
                        static_cast<int>(body)) != 1) {
    OpenSslFailure("decrypt");
  }
  Bytes tag(box.end() - kTagBytes, box.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes,
                          tag.data()) != 1) {
    OpenSslFailure("set tag");
  }
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + body, &len) != 1) {
    throw Error(ErrorCode::kIntegrityError, "authentication tag mismatch");
  }
  return plain;
}

}  // namespace sama::cpabe
