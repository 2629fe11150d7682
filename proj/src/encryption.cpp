#include "ncdh/encryption.hpp"

#include <openssl/sha.h>

namespace ncdh {

std::vector<std::uint8_t> sym_stream(const Key& key, std::size_t length) {
  std::vector<std::uint8_t> out;
  out.reserve(length + 32);
  std::array<std::uint8_t, 40> block_input{};
  std::copy(key.begin(), key.end(), block_input.begin());
  for (std::uint64_t i = 0; out.size() < length; ++i) {
    for (int b = 0; b < 8; ++b) block_input[32 + b] = static_cast<std::uint8_t>(i >> (8 * (7 - b)));
    std::array<std::uint8_t, 32> digest{};
    SHA256(block_input.data(), block_input.size(), digest.data());
    out.insert(out.end(), digest.begin(), digest.end());
  }
  out.resize(length);
  return out;
}

std::vector<std::uint8_t> sym_apply(const Key& key, std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out = sym_stream(key, data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] ^= data[i];
  return out;
}

HybridCiphertext hybrid_encrypt(const PublicParams& params, const PlatformMatrix& recipient_token,
                                std::span<const std::uint8_t> message, Rng& rng) {
  const KeyPair ephemeral = keygen(params, rng);
  const SharedSecret shared = derive_shared(ephemeral, recipient_token);
  return HybridCiphertext{ephemeral.y, sym_apply(shared.key, message)};
}

std::vector<std::uint8_t> hybrid_decrypt(const KeyPair& sk, const HybridCiphertext& ct) {
  return sym_apply(derive_shared(sk, ct.token).key, ct.body);
}

TextbookCiphertext textbook_encrypt(const PublicParams& params, const PlatformMatrix& recipient_token,
                                    const PlatformMatrix& message, Rng& rng) {
  if (!is_invertible(message)) throw NotInvertible("message matrix is not invertible");
  const KeyPair ephemeral = keygen(params, rng);
  const SharedSecret shared = derive_shared(ephemeral, recipient_token);
  return TextbookCiphertext{ephemeral.y, shared.k * message};
}

PlatformMatrix textbook_decrypt(const KeyPair& sk, const TextbookCiphertext& ct) {
  const SharedSecret shared = derive_shared(sk, ct.token);
  return platform_inv(shared.k) * ct.c2;
}

}  // namespace ncdh
