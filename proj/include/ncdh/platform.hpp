#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ncdh/field.hpp"
#include "ncdh/ncmatrix.hpp"
#include "ncdh/numtheory.hpp"
#include "ncdh/s3algebra.hpp"

namespace ncdh {

/// An element of Mat_2(F_p[S_3]); members of GL_2 are the invertible ones.
using PlatformMatrix = SquareMatrix<AlgebraElement>;

PlatformMatrix platform_identity(const PrimeModulus& p);
/// c * I with c in F_p, which is central in Mat_2(F_p[S_3]).
PlatformMatrix platform_scalar(const FieldElement& c);

/// Mat_2(F_p[S_3]) = Mat_2(F_p) + Mat_2(F_p) + Mat_4(F_p).
struct MatrixWedderburn {
  FieldMatrix trivial;   // 2x2
  FieldMatrix sign;      // 2x2
  FieldMatrix standard;  // 4x4, block (I,J) is the standard image of entry (I,J)

  friend bool operator==(const MatrixWedderburn&, const MatrixWedderburn&) = default;
};

MatrixWedderburn matrix_wedderburn(const PlatformMatrix& m);
PlatformMatrix matrix_wedderburn_inverse(const MatrixWedderburn& w);

bool is_invertible(const PlatformMatrix& m);
/// Inverse through the block decomposition; NotInvertible names the singular
/// component(s).
PlatformMatrix platform_inv(const PlatformMatrix& m);

/// T M T^{-1}.
PlatformMatrix conjugate(const PlatformMatrix& t, const PlatformMatrix& m);

/// Factored |GL_k(F_p)| for 1 <= k <= 4, built from the pieces p, p-1, p+1,
/// p^2+p+1, p^2+1.
std::map<Natural, unsigned> gl_order_factored(const PrimeModulus& p, unsigned k);

/// Exact multiplicative order of an invertible k x k matrix over F_p (k <= 4).
Natural field_matrix_order(const FieldMatrix& m);

/// Exact order in GL_2(F_p[S_3]): lcm of the three component orders.
Natural element_order(const PlatformMatrix& m);

/// |GL_2(F_p[S_3])| = p^8 (p-1)^8 (p+1)^4 (p^2+1)(p^2+p+1).
/// Throws CharacteristicExcluded for p in {2, 3}.
Natural group_order(std::uint64_t p);

/// Multiplicative order in F_p^* and F_p^2^*.
Natural multiplicative_order(const FieldElement& x);
Natural multiplicative_order(const QuadExtElement& x);

struct SamplerConfig {
  std::size_t steps = 8;
  Natural min_order = 4096;
  /// Optional ceiling, used to keep attack instances at desk scale.
  std::optional<Natural> max_order;
  unsigned retry_cap = 256;
};

/// Product of `steps` random structured invertibles, redrawn until the order
/// lands in range. Throws ThresholdUnreachable after `retry_cap` draws.
PlatformMatrix sample_platform_element(Rng& rng, const PrimeModulus& p, const SamplerConfig& config);

/// [[x, y], [y, x]] with x^2 != y^2, embedded through F_p -> F_p[S_3].
class TorusElement {
 public:
  /// Throws InvalidParameters when x^2 = y^2.
  TorusElement(FieldElement x, FieldElement y);

  const FieldElement& x() const noexcept { return x_; }
  const FieldElement& y() const noexcept { return y_; }

  PlatformMatrix as_platform() const;
  FieldMatrix as_field() const;
  /// (x^2 - y^2)^{-1} (x, -y).
  TorusElement inverse() const;
  TorusElement operator*(const TorusElement& o) const;

  friend bool operator==(const TorusElement&, const TorusElement&) = default;

 private:
  FieldElement x_;
  FieldElement y_;
};

/// Whether (x, y) is a valid torus element that fails to commute with X.
bool torus_candidate_acceptable(const PlatformMatrix& x_matrix, const FieldElement& x, const FieldElement& y);

/// Uniform torus element not commuting with X. Throws NoNoncommutingTorus when
/// X commutes with the whole torus.
TorusElement sample_torus(Rng& rng, const PlatformMatrix& x_matrix);

void append_bytes(std::vector<std::uint8_t>& out, const PlatformMatrix& m);
std::vector<std::uint8_t> to_bytes(const PlatformMatrix& m);
PlatformMatrix platform_from_bytes(std::span<const std::uint8_t> bytes, const PrimeModulus& p);

}  // namespace ncdh
