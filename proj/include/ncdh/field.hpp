#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncdh/errors.hpp"
#include "ncdh/numtheory.hpp"

namespace ncdh {

/// A prime p with 5 <= p < 2^63. Construction validates primality and the
/// characteristic restriction; every other type trusts an existing PrimeModulus.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  /// Bytes per serialized field element: ceil(bitlen(p) / 8).
  std::size_t byte_width() const noexcept;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  friend class FieldElement;
  struct Trusted {};
  PrimeModulus(Trusted, std::uint64_t p) : p_(p) {}

  std::uint64_t p_;
};

/// Residue modulo p, always stored canonically in [0, p).
class FieldElement {
 public:
  FieldElement(std::uint64_t value, const PrimeModulus& modulus)
      : value_(value % modulus.value()), p_(modulus.value()) {}

  static FieldElement from_signed(std::int64_t value, const PrimeModulus& modulus);

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return p_; }
  PrimeModulus prime() const { return PrimeModulus(PrimeModulus::Trusted{}, p_); }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;

 private:
  friend class QuadExtElement;
  struct Unchecked {};
  FieldElement(Unchecked, std::uint64_t value, std::uint64_t p) : value_(value), p_(p) {}
  void require_same(const FieldElement& o) const;

  std::uint64_t value_;
  std::uint64_t p_;
};

// Free functions used by the generic matrix code (found through ADL).
FieldElement zero_like(const FieldElement& x);
FieldElement one_like(const FieldElement& x);
/// Throws NotInvertible for zero.
FieldElement inverse(const FieldElement& x);

FieldElement pow(const FieldElement& base, const Natural& exponent);
FieldElement pow(const FieldElement& base, std::uint64_t exponent);

/// All roots of x^2 = a, ascending. Empty when a is a non-residue.
std::vector<FieldElement> sqrt_all(const FieldElement& a);

/// Legendre symbol as 0, 1 or -1.
int legendre(const FieldElement& a);

/// Smallest positive quadratic non-residue.
FieldElement find_nonresidue(const PrimeModulus& p);

/// Appends the fixed-width big-endian encoding.
void append_bytes(std::vector<std::uint8_t>& out, const FieldElement& x);
FieldElement field_from_bytes(std::span<const std::uint8_t> bytes, const PrimeModulus& p);
/// Lowercase hex of the fixed-width encoding.
std::string to_hex(const FieldElement& x);
FieldElement field_from_hex(const std::string& hex, const PrimeModulus& p);

/// F_p^2 = F_p[t]/(t^2 - d) for a fixed non-residue d.
class QuadExtParams {
 public:
  /// Throws InvalidParameters if d is a residue.
  explicit QuadExtParams(FieldElement d);
  /// Uses the smallest non-residue.
  explicit QuadExtParams(const PrimeModulus& p) : QuadExtParams(find_nonresidue(p)) {}

  const FieldElement& nonresidue() const noexcept { return d_; }
  friend bool operator==(const QuadExtParams&, const QuadExtParams&) = default;

 private:
  FieldElement d_;
};

/// c0 + c1*t with t^2 = d.
class QuadExtElement {
 public:
  QuadExtElement(FieldElement c0, FieldElement c1, const QuadExtParams& params);
  static QuadExtElement embed(const FieldElement& c0, const QuadExtParams& params);

  const FieldElement& c0() const noexcept { return c0_; }
  const FieldElement& c1() const noexcept { return c1_; }
  QuadExtParams params() const { return QuadExtParams(d_); }
  bool is_zero() const noexcept { return c0_.is_zero() && c1_.is_zero(); }
  bool is_one() const noexcept { return c0_.value() == 1 && c1_.is_zero(); }

  QuadExtElement operator+(const QuadExtElement& o) const;
  QuadExtElement operator-(const QuadExtElement& o) const;
  QuadExtElement operator*(const QuadExtElement& o) const;
  QuadExtElement operator-() const;

  /// c0 - c1*t, which equals x^p.
  QuadExtElement conjugate() const;
  /// c0^2 - d*c1^2.
  FieldElement norm() const;

  friend bool operator==(const QuadExtElement& a, const QuadExtElement& b) {
    return a.c0_ == b.c0_ && a.c1_ == b.c1_ && a.d_ == b.d_;
  }

 private:
  QuadExtElement(FieldElement c0, FieldElement c1, FieldElement d)
      : c0_(c0), c1_(c1), d_(d) {}
  void require_same(const QuadExtElement& o) const;
  friend QuadExtElement inverse(const QuadExtElement& x);

  FieldElement c0_;
  FieldElement c1_;
  FieldElement d_;
};

QuadExtElement inverse(const QuadExtElement& x);
QuadExtElement pow(const QuadExtElement& base, const Natural& exponent);

}  // namespace ncdh
