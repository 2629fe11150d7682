#include "ncdh/field.hpp"

#include <algorithm>
#include <bit>

namespace ncdh {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

}  // namespace

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (p == 2 || p == 3) {
    throw CharacteristicExcluded("characteristic " + std::to_string(p) + " is excluded");
  }
  if (p < 5 || p >= (std::uint64_t{1} << 63) || !is_prime_u64(p)) {
    throw InvalidModulus(std::to_string(p) + " is not a prime in [5, 2^63)");
  }
}

std::size_t PrimeModulus::byte_width() const noexcept {
  return (static_cast<std::size_t>(std::bit_width(p_)) + 7) / 8;
}

FieldElement FieldElement::from_signed(std::int64_t value, const PrimeModulus& modulus) {
  const auto p = static_cast<std::int64_t>(modulus.value());
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return FieldElement(static_cast<std::uint64_t>(r), modulus);
}

void FieldElement::require_same(const FieldElement& o) const {
  if (p_ != o.p_) {
    throw ModulusMismatch("field elements mod " + std::to_string(p_) + " and mod " +
                          std::to_string(o.p_));
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  std::uint64_t s = value_ + o.value_;  // p < 2^63, no overflow
  if (s >= p_) s -= p_;
  return FieldElement(Unchecked{}, s, p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  const std::uint64_t s = value_ >= o.value_ ? value_ - o.value_ : value_ + p_ - o.value_;
  return FieldElement(Unchecked{}, s, p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return FieldElement(Unchecked{}, mulmod(value_, o.value_, p_), p_);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(Unchecked{}, value_ == 0 ? 0 : p_ - value_, p_);
}

FieldElement zero_like(const FieldElement& x) { return FieldElement(0, x.prime()); }
FieldElement one_like(const FieldElement& x) { return FieldElement(1, x.prime()); }

FieldElement inverse(const FieldElement& x) {
  if (x.is_zero()) throw NotInvertible("zero has no inverse mod " + std::to_string(x.modulus()));
  // Extended Euclid on signed 128-bit to avoid overflow for p near 2^63.
  __int128 r0 = x.modulus(), r1 = x.value(), t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (t0 < 0) t0 += x.modulus();
  return FieldElement(static_cast<std::uint64_t>(t0), x.prime());
}

FieldElement pow(const FieldElement& base, std::uint64_t exponent) {
  FieldElement result = one_like(base);
  FieldElement b = base;
  while (exponent) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

FieldElement pow(const FieldElement& base, const Natural& exponent) {
  FieldElement result = one_like(base);
  if (exponent == 0) return result;
  for (std::size_t i = boost::multiprecision::msb(exponent) + 1; i-- > 0;) {
    result *= result;
    if (boost::multiprecision::bit_test(exponent, i)) result *= base;
  }
  return result;
}

int legendre(const FieldElement& a) {
  if (a.is_zero()) return 0;
  return pow(a, (a.modulus() - 1) / 2).value() == 1 ? 1 : -1;
}

std::vector<FieldElement> sqrt_all(const FieldElement& a) {
  if (a.is_zero()) return {a};
  if (legendre(a) != 1) return {};
  const std::uint64_t p = a.modulus();
  FieldElement root = a;
  if (p % 4 == 3) {
    root = pow(a, (p + 1) / 4);
  } else {
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    FieldElement c = pow(find_nonresidue(a.prime()), q);
    FieldElement t = pow(a, q);
    root = pow(a, (q + 1) / 2);
    unsigned m = s;
    while (t.value() != 1) {
      unsigned i = 0;
      for (FieldElement t2 = t; t2.value() != 1; t2 *= t2) ++i;
      FieldElement b = c;
      for (unsigned k = 0; k + 1 < m - i; ++k) b *= b;
      m = i;
      c = b * b;
      t *= c;
      root *= b;
    }
  }
  std::vector<FieldElement> out{root, -root};
  std::sort(out.begin(), out.end());
  return out;
}

FieldElement find_nonresidue(const PrimeModulus& p) {
  for (std::uint64_t d = 2;; ++d) {
    FieldElement candidate(d, p);
    if (legendre(candidate) == -1) return candidate;
  }
}

void append_bytes(std::vector<std::uint8_t>& out, const FieldElement& x) {
  const std::size_t w = x.prime().byte_width();
  for (std::size_t i = w; i-- > 0;) out.push_back(static_cast<std::uint8_t>(x.value() >> (8 * i)));
}

FieldElement field_from_bytes(std::span<const std::uint8_t> bytes, const PrimeModulus& p) {
  if (bytes.size() != p.byte_width()) {
    throw FormatError("field element needs " + std::to_string(p.byte_width()) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  std::uint64_t v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  if (v >= p.value()) throw FormatError("non-canonical field element " + std::to_string(v));
  return FieldElement(v, p);
}

std::string to_hex(const FieldElement& x) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::vector<std::uint8_t> bytes;
  append_bytes(bytes, x);
  std::string out;
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

FieldElement field_from_hex(const std::string& hex, const PrimeModulus& p) {
  if (hex.size() != 2 * p.byte_width()) {
    throw FormatError("field element hex '" + hex + "' must be " +
                      std::to_string(2 * p.byte_width()) + " characters");
  }
  const Natural v = natural_from_hex(hex);
  if (v >= p.value()) throw FormatError("non-canonical field element " + hex);
  return FieldElement(static_cast<std::uint64_t>(v), p);
}

QuadExtParams::QuadExtParams(FieldElement d) : d_(d) {
  if (legendre(d) != -1) {
    throw InvalidParameters(std::to_string(d.value()) + " is not a non-residue mod " +
                            std::to_string(d.modulus()));
  }
}

QuadExtElement::QuadExtElement(FieldElement c0, FieldElement c1, const QuadExtParams& params)
    : c0_(c0), c1_(c1), d_(params.nonresidue()) {
  if (c0.modulus() != c1.modulus() || c0.modulus() != d_.modulus()) {
    throw ModulusMismatch("quadratic extension components disagree on the modulus");
  }
}

QuadExtElement QuadExtElement::embed(const FieldElement& c0, const QuadExtParams& params) {
  return QuadExtElement(c0, zero_like(c0), params);
}

void QuadExtElement::require_same(const QuadExtElement& o) const {
  if (d_ != o.d_) throw ModulusMismatch("elements of different quadratic extensions");
}

QuadExtElement QuadExtElement::operator+(const QuadExtElement& o) const {
  require_same(o);
  return QuadExtElement(c0_ + o.c0_, c1_ + o.c1_, d_);
}

QuadExtElement QuadExtElement::operator-(const QuadExtElement& o) const {
  require_same(o);
  return QuadExtElement(c0_ - o.c0_, c1_ - o.c1_, d_);
}

QuadExtElement QuadExtElement::operator*(const QuadExtElement& o) const {
  require_same(o);
  return QuadExtElement(c0_ * o.c0_ + d_ * c1_ * o.c1_, c0_ * o.c1_ + c1_ * o.c0_, d_);
}

QuadExtElement QuadExtElement::operator-() const { return QuadExtElement(-c0_, -c1_, d_); }

QuadExtElement QuadExtElement::conjugate() const { return QuadExtElement(c0_, -c1_, d_); }

FieldElement QuadExtElement::norm() const { return c0_ * c0_ - d_ * c1_ * c1_; }

QuadExtElement inverse(const QuadExtElement& x) {
  if (x.is_zero()) throw NotInvertible("zero has no inverse in F_p^2");
  // d is a non-residue, so the norm of a nonzero element is nonzero.
  const FieldElement n_inv = inverse(x.norm());
  return QuadExtElement(x.c0_ * n_inv, -x.c1_ * n_inv, x.d_);
}

QuadExtElement pow(const QuadExtElement& base, const Natural& exponent) {
  QuadExtElement result = QuadExtElement::embed(one_like(base.c0()), base.params());
  if (exponent == 0) return result;
  for (std::size_t i = boost::multiprecision::msb(exponent) + 1; i-- > 0;) {
    result = result * result;
    if (boost::multiprecision::bit_test(exponent, i)) result = result * base;
  }
  return result;
}

}  // namespace ncdh
