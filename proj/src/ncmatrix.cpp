#include "ncdh/ncmatrix.hpp"

namespace ncdh {

FieldElement determinant(const FieldMatrix& a) {
  const std::size_t n = a.size();
  FieldMatrix m = a;
  FieldElement det = one_like(a(0, 0));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return zero_like(det);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const FieldElement inv = inverse(m(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const FieldElement f = m(i, col) * inv;
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::optional<FieldMatrix> gauss_inverse(const FieldMatrix& a) {
  const std::size_t n = a.size();
  FieldMatrix m = a;
  FieldMatrix inv = FieldMatrix::identity(n, a(0, 0));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const FieldElement s = inverse(m(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) *= s;
      inv(col, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col).is_zero()) continue;
      const FieldElement f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace ncdh
