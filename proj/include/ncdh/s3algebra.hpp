#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncdh/field.hpp"
#include "ncdh/ncmatrix.hpp"

namespace ncdh {

/// An element of S_3, identified by its position in the fixed basis order
/// [e, (123), (132), (12), (13), (23)].
class Perm {
 public:
  static constexpr std::size_t kOrder = 6;

  explicit constexpr Perm(std::size_t index) : index_(index) {
    if (index >= kOrder) throw std::out_of_range("Perm index");
  }
  static constexpr Perm identity() { return Perm(0); }
  static Perm from_mapping(const std::array<int, 3>& images);
  static std::array<Perm, kOrder> all();

  std::size_t index() const noexcept { return index_; }
  /// Zero-based images of the points 0, 1, 2.
  const std::array<int, 3>& mapping() const;
  int sign() const;
  Perm inverse() const;
  /// Cycle notation, e.g. "(123)" or "e".
  std::string name() const;

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::size_t index_;
};

/// (g o h)(x) = g(h(x)).
Perm compose(const Perm& g, const Perm& h);

/// Integer matrix of the fixed standard representation, row-major 2x2.
const std::array<int, 4>& standard_rep(const Perm& g);

/// An element of F_p[S_3]: coefficient i belongs to basis permutation i.
class AlgebraElement {
 public:
  explicit AlgebraElement(std::array<FieldElement, 6> coeffs);

  static AlgebraElement zero(const PrimeModulus& p);
  static AlgebraElement delta(const Perm& g, const PrimeModulus& p);
  /// c * delta_e.
  static AlgebraElement scalar(const FieldElement& c);

  const std::array<FieldElement, 6>& coeffs() const noexcept { return coeffs_; }
  const FieldElement& operator[](const Perm& g) const { return coeffs_[g.index()]; }
  std::uint64_t modulus() const noexcept { return coeffs_[0].modulus(); }
  PrimeModulus prime() const { return coeffs_[0].prime(); }
  bool is_zero() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  /// Convolution: c(g) = sum_h a(h) b(h^{-1} g).
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(const FieldElement& c) const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::array<FieldElement, 6> coeffs_;
};

AlgebraElement zero_like(const AlgebraElement& x);
AlgebraElement one_like(const AlgebraElement& x);
/// Inverts through the Wedderburn components. NotInvertible names every
/// vanishing component.
AlgebraElement inverse(const AlgebraElement& x);

/// Image under F_p[S_3] -> F_p + F_p + Mat_2(F_p).
struct WedderburnImage {
  FieldElement triv;
  FieldElement sign;
  FieldMatrix std;

  WedderburnImage operator*(const WedderburnImage& o) const {
    return {triv * o.triv, sign * o.sign, std * o.std};
  }
  friend bool operator==(const WedderburnImage&, const WedderburnImage&) = default;
};

WedderburnImage wedderburn_forward(const AlgebraElement& a);
AlgebraElement wedderburn_inverse(const WedderburnImage& w);

/// Names of the vanishing components ("trivial", "sign", "standard"); empty
/// iff the element is a unit.
std::vector<std::string> singular_components(const WedderburnImage& w);

/// Matrix of left multiplication by `a` on the basis, column k = a * delta_k.
FieldMatrix left_regular_matrix(const AlgebraElement& a);

void append_bytes(std::vector<std::uint8_t>& out, const AlgebraElement& a);
AlgebraElement algebra_from_bytes(std::span<const std::uint8_t> bytes, const PrimeModulus& p);

/// Uniform coefficients.
AlgebraElement random_algebra_element(Rng& rng, const PrimeModulus& p);

}  // namespace ncdh
