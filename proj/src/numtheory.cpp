#include "ncdh/numtheory.hpp"

#include "ncdh/errors.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace ncdh {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

constexpr std::array<unsigned, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

Natural powmod(Natural b, Natural e, const Natural& m) {
  Natural r = 1;
  b %= m;
  while (e != 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

Natural pollard_brent(const Natural& n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  Rng rng(seed);
  const Natural c = 1 + uniform_between(rng, 0, n - 2);
  Natural y = uniform_between(rng, 0, n - 1);
  Natural g = 1, r = 1, q = 1, x, ys;
  const unsigned m = 128;
  auto f = [&](const Natural& v) { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (Natural i = 0; i < r; ++i) y = f(y);
    Natural k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned i = 0; i < m && k + i < r; ++i) {
        y = f(y);
        q = q * (x > y ? x - y : y - x) % n;
      }
      g = boost::multiprecision::gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = boost::multiprecision::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void factor_into(const Natural& n, std::map<Natural, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (std::uint64_t seed = 1;; ++seed) {
    const Natural d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  if ((bound & (bound - 1)) == 0) return rng() & (bound - 1);
  std::uint64_t mask = bound - 1;
  for (int s = 1; s < 64; s <<= 1) mask |= mask >> s;
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

Natural uniform_between(Rng& rng, const Natural& lo, const Natural& hi) {
  if (lo > hi) throw std::invalid_argument("uniform_between: empty range");
  const Natural span = hi - lo;
  if (span == 0) return lo;
  const unsigned bits = boost::multiprecision::msb(span) + 1;
  for (;;) {
    Natural v = 0;
    unsigned filled = 0;
    while (filled < bits) {
      v <<= 64;
      v |= rng();
      filled += 64;
    }
    v >>= (filled - bits);
    if (v <= span) return lo + v;
  }
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Natural& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(static_cast<std::uint64_t>(n));
  for (unsigned p : kWitnesses) {
    if (n % p == 0) return false;
  }
  Natural d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : kWitnesses) {
    Natural x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::map<Natural, unsigned> factorize(const Natural& n) {
  if (n == 0) throw std::invalid_argument("factorize: zero");
  std::map<Natural, unsigned> out;
  Natural rest = n;
  for (unsigned p = 2; p < 4096 && rest > 1; p += (p == 2 ? 1 : 2)) {
    while (rest % p == 0) {
      ++out[p];
      rest /= p;
    }
  }
  factor_into(rest, out);
  return out;
}

std::map<Natural, unsigned> factorize_product(const std::vector<Natural>& pieces) {
  std::map<Natural, unsigned> out;
  for (const auto& piece : pieces) {
    for (const auto& [prime, exp] : factorize(piece)) out[prime] += exp;
  }
  return out;
}

Natural lcm(const Natural& a, const Natural& b) {
  if (a == 0 || b == 0) return 0;
  return a / boost::multiprecision::gcd(a, b) * b;
}

Natural pow_natural(const Natural& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

std::string to_hex(const Natural& n) {
  if (n == 0) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  Natural v = n;
  while (v != 0) {
    out.push_back(kDigits[static_cast<unsigned>(v & 0xf)]);
    v >>= 4;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Natural natural_from_hex(const std::string& hex) {
  if (hex.empty()) throw FormatError("empty hex string");
  Natural v = 0;
  for (char c : hex) {
    unsigned d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else throw FormatError("invalid lowercase hex digit in '" + hex + "'");
    v = (v << 4) | d;
  }
  return v;
}

}  // namespace ncdh
