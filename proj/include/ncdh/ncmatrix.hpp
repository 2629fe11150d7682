#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncdh/errors.hpp"
#include "ncdh/field.hpp"
#include "ncdh/numtheory.hpp"

namespace ncdh {

/// An exact, possibly noncommutative ring with identity. Elements carry their
/// ring context (the modulus), so zero/one are produced from an existing value.
template <typename R>
concept ExactRing = std::copyable<R> && std::equality_comparable<R> && requires(const R& a, const R& b) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { zero_like(a) } -> std::convertible_to<R>;
  { one_like(a) } -> std::convertible_to<R>;
  { inverse(a) } -> std::convertible_to<R>;  // throws NotInvertible
};

/// True for rings in which every nonzero element is invertible.
template <typename R>
inline constexpr bool is_division_ring_v = false;
template <>
inline constexpr bool is_division_ring_v<FieldElement> = true;

template <ExactRing R>
class SquareMatrix {
 public:
  SquareMatrix(std::size_t n, std::vector<R> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ == 0 || entries_.size() != n_ * n_) {
      throw std::invalid_argument("SquareMatrix: need n >= 1 and n*n entries");
    }
  }

  static SquareMatrix identity(std::size_t n, const R& like) {
    std::vector<R> e(n * n, zero_like(like));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = one_like(like);
    return SquareMatrix(n, std::move(e));
  }
  static SquareMatrix zero(std::size_t n, const R& like) {
    return SquareMatrix(n, std::vector<R>(n * n, zero_like(like)));
  }

  std::size_t size() const noexcept { return n_; }
  const R& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  R& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const std::vector<R>& entries() const noexcept { return entries_; }

  /// A^{ij}: delete row i and column j.
  SquareMatrix minor(std::size_t row, std::size_t col) const {
    if (n_ < 2) throw std::invalid_argument("minor of a 1x1 matrix");
    std::vector<R> e;
    e.reserve((n_ - 1) * (n_ - 1));
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != col) e.push_back((*this)(i, j));
      }
    }
    return SquareMatrix(n_ - 1, std::move(e));
  }
  /// r_i^j: row i with position j removed.
  std::vector<R> row_without(std::size_t row, std::size_t col) const {
    std::vector<R> r;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != col) r.push_back((*this)(row, j));
    }
    return r;
  }
  /// c_i^j: column j with position i removed.
  std::vector<R> col_without(std::size_t row, std::size_t col) const {
    std::vector<R> c;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i != row) c.push_back((*this)(i, col));
    }
    return c;
  }

  SquareMatrix operator*(const SquareMatrix& o) const {
    require_same_size(o);
    std::vector<R> e;
    e.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        R acc = (*this)(i, 0) * o(0, j);
        for (std::size_t k = 1; k < n_; ++k) acc = acc + (*this)(i, k) * o(k, j);
        e.push_back(std::move(acc));
      }
    }
    return SquareMatrix(n_, std::move(e));
  }
  SquareMatrix operator+(const SquareMatrix& o) const { return zip(o, [](const R& a, const R& b) { return a + b; }); }
  SquareMatrix operator-(const SquareMatrix& o) const { return zip(o, [](const R& a, const R& b) { return a - b; }); }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  void require_same_size(const SquareMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  }
  template <typename F>
  SquareMatrix zip(const SquareMatrix& o, F f) const {
    require_same_size(o);
    std::vector<R> e;
    e.reserve(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) e.push_back(f(entries_[k], o.entries_[k]));
    return SquareMatrix(n_, std::move(e));
  }

  std::size_t n_;
  std::vector<R> entries_;
};

using FieldMatrix = SquareMatrix<FieldElement>;

template <ExactRing R>
SquareMatrix<R> mat_pow(const SquareMatrix<R>& a, const Natural& exponent) {
  auto result = SquareMatrix<R>::identity(a.size(), a(0, 0));
  if (exponent == 0) return result;
  for (std::size_t i = boost::multiprecision::msb(exponent) + 1; i-- > 0;) {
    result = result * result;
    if (boost::multiprecision::bit_test(exponent, i)) result = result * a;
  }
  return result;
}

/// Largest size accepted by the recursive quasideterminant machinery.
inline constexpr std::size_t kMaxQuasideterminantSize = 4;

template <ExactRing R>
SquareMatrix<R> mat_inv_qd(const SquareMatrix<R>& a);

/// |A|_{ij} = a_ij - r_i^j (A^{ij})^{-1} c_i^j (zero-based indices).
/// Throws MinorNotInvertible(i, j) when A^{ij} has no inverse.
template <ExactRing R>
R quasideterminant(const SquareMatrix<R>& a, std::size_t row, std::size_t col) {
  const std::size_t n = a.size();
  if (row >= n || col >= n) throw std::out_of_range("quasideterminant index");
  if (n > kMaxQuasideterminantSize) throw std::invalid_argument("quasideterminant: n > 4");
  if (n == 1) return a(0, 0);
  std::optional<SquareMatrix<R>> minor_inv;
  try {
    minor_inv = mat_inv_qd(a.minor(row, col));
  } catch (const NotInvertible&) {
    throw MinorNotInvertible(row, col);
  }
  const auto r = a.row_without(row, col);
  const auto c = a.col_without(row, col);
  R acc = a(row, col);
  for (std::size_t k = 0; k < n - 1; ++k) {
    for (std::size_t l = 0; l < n - 1; ++l) acc = acc - r[k] * (*minor_inv)(k, l) * c[l];
  }
  return acc;
}

/// Entrywise inverse (A^{-1})_{ji} = |A|_{ij}^{-1}. Over a division ring an
/// undefined |A|_{ij} (singular minor) means the entry is zero; over any other
/// ring it is a generic-position failure and reported as NotInvertible.
template <ExactRing R>
SquareMatrix<R> mat_inv_qd(const SquareMatrix<R>& a) {
  const std::size_t n = a.size();
  const R zero = zero_like(a(0, 0));
  if (n == 1) return SquareMatrix<R>(1, {inverse(a(0, 0))});
  std::vector<R> inv(n * n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto where = " at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      try {
        const R qd = quasideterminant(a, i, j);
        try {
          inv[j * n + i] = inverse(qd);
        } catch (const NotInvertible&) {
          throw NotInvertible("quasideterminant not invertible" + where);
        }
      } catch (const MinorNotInvertible&) {
        if constexpr (!is_division_ring_v<R>) {
          throw NotInvertible("quasideterminant undefined" + where);
        }
      }
    }
  }
  SquareMatrix<R> result(n, std::move(inv));
  const auto id = SquareMatrix<R>::identity(n, a(0, 0));
  if (a * result != id || result * a != id) throw NotInvertible("quasideterminant inverse check failed");
  return result;
}

/// D_{I,J}(A) = |A|_{i1 j1} |A^{i1 j1}|_{i2 j2} ..., multiplied left to right.
/// `rows` and `cols` are zero-based orderings of {0..n-1}.
template <ExactRing R>
R nc_det(const SquareMatrix<R>& a, const std::vector<std::size_t>& rows,
         const std::vector<std::size_t>& cols) {
  const std::size_t n = a.size();
  auto is_ordering = [n](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] != k) return false;
    }
    return v.size() == n;
  };
  if (!is_ordering(rows) || !is_ordering(cols)) throw std::invalid_argument("nc_det: orderings must permute 0..n-1");

  std::vector<std::size_t> row_labels(n), col_labels(n);
  for (std::size_t k = 0; k < n; ++k) row_labels[k] = col_labels[k] = k;
  SquareMatrix<R> current = a;
  std::optional<R> result;
  for (std::size_t k = 0; k < n; ++k) {
    const auto pi = static_cast<std::size_t>(std::find(row_labels.begin(), row_labels.end(), rows[k]) - row_labels.begin());
    const auto pj = static_cast<std::size_t>(std::find(col_labels.begin(), col_labels.end(), cols[k]) - col_labels.begin());
    R factor = [&] {
      try {
        return quasideterminant(current, pi, pj);
      } catch (const MinorNotInvertible&) {
        throw MinorNotInvertible(rows[k], cols[k]);
      }
    }();
    result = result ? *result * factor : factor;
    if (k + 1 < n) current = current.minor(pi, pj);
    row_labels.erase(row_labels.begin() + static_cast<std::ptrdiff_t>(pi));
    col_labels.erase(col_labels.begin() + static_cast<std::ptrdiff_t>(pj));
  }
  return *result;
}

/// D with I = J = (0, 1, ..., n-1).
template <ExactRing R>
R nc_det(const SquareMatrix<R>& a) {
  std::vector<std::size_t> order(a.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  return nc_det(a, order, order);
}

enum class StructuredKind { Upper, Lower, Schur };

/// Upper: [[a, c], [0, b]]. Lower: [[a, 0], [c, b]]. Schur: [[u, b], [c, 1 + c u^{-1} b]]
/// where `first` plays u.
template <ExactRing R>
struct StructuredParts {
  R first;
  R second;
  R third;
};

template <ExactRing R>
struct StructuredInvertible {
  SquareMatrix<R> matrix;
  SquareMatrix<R> inverse;
};

/// Builds one of the three invertible 2x2 forms together with its closed-form
/// inverse. Throws NotInvertible if a required part has no inverse.
template <ExactRing R>
StructuredInvertible<R> structured_invertible(StructuredKind kind, const StructuredParts<R>& parts) {
  const R zero = zero_like(parts.first);
  const R one = one_like(parts.first);
  auto mat = [](R a11, R a12, R a21, R a22) { return SquareMatrix<R>(2, {a11, a12, a21, a22}); };
  std::optional<StructuredInvertible<R>> out;
  switch (kind) {
    case StructuredKind::Upper: {
      const auto& [a, b, c] = parts;
      const R a_inv = inverse(a), b_inv = inverse(b);
      out.emplace(StructuredInvertible<R>{mat(a, c, zero, b), mat(a_inv, -(a_inv * c * b_inv), zero, b_inv)});
      break;
    }
    case StructuredKind::Lower: {
      const auto& [a, b, c] = parts;
      const R a_inv = inverse(a), b_inv = inverse(b);
      out.emplace(StructuredInvertible<R>{mat(a, zero, c, b), mat(a_inv, zero, -(b_inv * c * a_inv), b_inv)});
      break;
    }
    case StructuredKind::Schur: {
      const auto& [u, b, c] = parts;
      const R u_inv = inverse(u);
      out.emplace(StructuredInvertible<R>{mat(u, b, c, one + c * u_inv * b),
                                          mat(u_inv + u_inv * b * c * u_inv, -(u_inv * b), -(c * u_inv), one)});
      break;
    }
  }
  const auto id = SquareMatrix<R>::identity(2, parts.first);
  if (out->matrix * out->inverse != id || out->inverse * out->matrix != id) {
    throw std::logic_error("structured_invertible: closed-form inverse check failed");
  }
  return *out;
}

// Commutative linear algebra over F_p, any size.

FieldElement determinant(const FieldMatrix& a);
/// Gauss-Jordan inverse; nullopt when singular.
std::optional<FieldMatrix> gauss_inverse(const FieldMatrix& a);

}  // namespace ncdh
