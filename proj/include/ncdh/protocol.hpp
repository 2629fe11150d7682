#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ncdh/platform.hpp"

namespace ncdh {

using Key = std::array<std::uint8_t, 32>;

inline constexpr std::string_view kKdfPrefix = "NCDH1";

/// Public data shared by both parties: the platform over F_p, X and its order n.
struct PublicParams {
  PrimeModulus p;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  PlatformMatrix x;
  Natural n;
  std::string context;
};

struct KeyPair {
  Natural a;
  TorusElement t;
  PlatformMatrix y;  // T X^a T^{-1}, the public token
};

struct SharedSecret {
  PlatformMatrix k;
  Key key;
};

/// Draws X with sample_platform_element (seeded by `seed`) and computes its
/// exact order. Rejects steps = 0 and any X of order below 3.
PublicParams setup(const PrimeModulus& p, std::uint64_t seed, const SamplerConfig& config,
                   std::string context = {});

/// Checks the PublicParams invariants (X invertible, n exact, n >= 3).
void validate(const PublicParams& params);

/// a uniform in {2, ..., n-1}, T from sample_torus, Y = T X^a T^{-1}.
KeyPair keygen(const PublicParams& params, Rng& rng);

/// K = T (other)^a T^{-1}; key = kdf(K).
SharedSecret derive_shared(const KeyPair& self, const PlatformMatrix& other_token);

/// SHA-256(prefix || BE64(p) || serialize(K)).
Key kdf(const PlatformMatrix& k, std::string_view prefix = kKdfPrefix);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> bytes_from_hex(const std::string& hex);

}  // namespace ncdh
