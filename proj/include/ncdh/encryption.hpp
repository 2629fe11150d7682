#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ncdh/protocol.hpp"

namespace ncdh {

struct HybridCiphertext {
  PlatformMatrix token;  // T' X^b T'^{-1}
  std::vector<std::uint8_t> body;
};

struct TextbookCiphertext {
  PlatformMatrix token;
  PlatformMatrix c2;  // K M
};

/// Block i is SHA-256(key || BE64(i)); the stream is the concatenation
/// truncated to `length` bytes.
std::vector<std::uint8_t> sym_stream(const Key& key, std::size_t length);

/// XOR with sym_stream; encryption and decryption are the same map.
std::vector<std::uint8_t> sym_apply(const Key& key, std::span<const std::uint8_t> data);

HybridCiphertext hybrid_encrypt(const PublicParams& params, const PlatformMatrix& recipient_token,
                                std::span<const std::uint8_t> message, Rng& rng);
std::vector<std::uint8_t> hybrid_decrypt(const KeyPair& sk, const HybridCiphertext& ct);

/// c2 = K M, K on the left. Throws NotInvertible if M is singular.
TextbookCiphertext textbook_encrypt(const PublicParams& params, const PlatformMatrix& recipient_token,
                                    const PlatformMatrix& message, Rng& rng);
/// M = K^{-1} c2.
PlatformMatrix textbook_decrypt(const KeyPair& sk, const TextbookCiphertext& ct);

}  // namespace ncdh
