#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ncdh {

/// Unbounded nonnegative integer used for group orders and secret exponents.
using Natural = boost::multiprecision::cpp_int;

/// The only randomness source in the library. mt19937_64 output is fixed by
/// the standard, so seeded runs are reproducible everywhere; the distribution
/// helpers below are hand-rolled for the same reason.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be nonzero.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform Natural in [lo, hi]. Requires lo <= hi.
Natural uniform_between(Rng& rng, const Natural& lo, const Natural& hi);

/// Deterministic Miller-Rabin for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

/// Miller-Rabin with the first 13 prime bases. Deterministic below 3.3e24,
/// which covers every factor piece produced for 40-bit moduli.
bool is_prime(const Natural& n);

/// Prime factorization by trial division followed by Brent's Pollard rho.
std::map<Natural, unsigned> factorize(const Natural& n);

/// Merges factorizations of the pieces of a product.
std::map<Natural, unsigned> factorize_product(const std::vector<Natural>& pieces);

Natural lcm(const Natural& a, const Natural& b);

Natural pow_natural(const Natural& base, unsigned exponent);

/// Lowercase hex without leading zeros ("0" for zero).
std::string to_hex(const Natural& n);
Natural natural_from_hex(const std::string& hex);

/// Multiplicative order of an element of a finite group whose order is
/// `group_order` (given factored). `is_identity(e)` must report whether the
/// element raised to e is the identity.
template <typename PowIsIdentity>
Natural order_from_factored(const std::map<Natural, unsigned>& group_order,
                            PowIsIdentity&& is_identity) {
  Natural n = 1;
  for (const auto& [prime, exp] : group_order) n *= pow_natural(prime, exp);
  for (const auto& [prime, exp] : group_order) {
    for (unsigned k = 0; k < exp; ++k) {
      const Natural candidate = n / prime;
      if (!is_identity(candidate)) break;
      n = candidate;
    }
  }
  return n;
}

}  // namespace ncdh
