#include "ncdh/protocol.hpp"

#include <openssl/sha.h>

namespace ncdh {

namespace {

void require_token(const PlatformMatrix& token, const PrimeModulus& p) {
  if (token.size() != 2) throw FormatError("token must be 2x2");
  if (token(0, 0).modulus() != p.value()) throw ModulusMismatch("token modulus differs from the key's");
  if (!is_invertible(token)) throw NotInvertible("peer token is not invertible");
}

}  // namespace

PublicParams setup(const PrimeModulus& p, std::uint64_t seed, const SamplerConfig& config, std::string context) {
  if (config.steps == 0) throw InvalidParameters("steps = 0 gives X = I, which has order 1");
  SamplerConfig effective = config;
  if (effective.min_order < 3) effective.min_order = 3;
  Rng rng(seed);
  PlatformMatrix x = sample_platform_element(rng, p, effective);
  Natural n = element_order(x);
  return PublicParams{p, seed, config.steps, std::move(x), std::move(n), std::move(context)};
}

void validate(const PublicParams& params) {
  if (params.x.size() != 2 || params.x(0, 0).modulus() != params.p.value()) {
    throw InvalidParameters("X is not a 2x2 matrix over the stated field");
  }
  if (params.n < 3) throw InvalidParameters("order n must be at least 3");
  if (element_order(params.x) != params.n) throw InvalidParameters("stated n is not the order of X");
}

KeyPair keygen(const PublicParams& params, Rng& rng) {
  Natural a = uniform_between(rng, 2, params.n - 1);
  TorusElement t = sample_torus(rng, params.x);
  PlatformMatrix y = t.as_platform() * mat_pow(params.x, a) * t.inverse().as_platform();
  return KeyPair{std::move(a), t, std::move(y)};
}

SharedSecret derive_shared(const KeyPair& self, const PlatformMatrix& other_token) {
  require_token(other_token, self.y(0, 0).prime());
  PlatformMatrix k = self.t.as_platform() * mat_pow(other_token, self.a) * self.t.inverse().as_platform();
  const Key key = kdf(k);
  return SharedSecret{std::move(k), key};
}

Key kdf(const PlatformMatrix& k, std::string_view prefix) {
  std::vector<std::uint8_t> message(prefix.begin(), prefix.end());
  const std::uint64_t p = k(0, 0).modulus();
  for (int i = 7; i >= 0; --i) message.push_back(static_cast<std::uint8_t>(p >> (8 * i)));
  append_bytes(message, k);
  Key out{};
  SHA256(message.data(), message.size(), out.data());
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> bytes_from_hex(const std::string& hex) {
  if (hex.size() % 2) throw FormatError("odd-length hex string");
  auto nibble = [&](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    throw FormatError("invalid lowercase hex digit");
  };
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return out;
}

}  // namespace ncdh
