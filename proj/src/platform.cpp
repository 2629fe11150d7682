#include "ncdh/platform.hpp"

namespace ncdh {

namespace {

FieldMatrix component(FieldElement WedderburnImage::*part, const std::vector<WedderburnImage>& images) {
  return FieldMatrix(2, {images[0].*part, images[1].*part, images[2].*part, images[3].*part});
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

std::vector<std::string> singular_blocks(const MatrixWedderburn& w) {
  std::vector<std::string> bad;
  if (determinant(w.trivial).is_zero()) bad.emplace_back("trivial");
  if (determinant(w.sign).is_zero()) bad.emplace_back("sign");
  if (determinant(w.standard).is_zero()) bad.emplace_back("standard");
  return bad;
}

}  // namespace

PlatformMatrix platform_identity(const PrimeModulus& p) {
  return PlatformMatrix::identity(2, AlgebraElement::zero(p));
}

PlatformMatrix platform_scalar(const FieldElement& c) {
  const auto s = AlgebraElement::scalar(c);
  const auto z = AlgebraElement::zero(c.prime());
  return PlatformMatrix(2, {s, z, z, s});
}

MatrixWedderburn matrix_wedderburn(const PlatformMatrix& m) {
  std::vector<WedderburnImage> images;
  for (const auto& e : m.entries()) images.push_back(wedderburn_forward(e));
  const PrimeModulus p = m(0, 0).prime();
  std::vector<FieldElement> standard(16, FieldElement(0, p));
  for (std::size_t bi = 0; bi < 2; ++bi) {
    for (std::size_t bj = 0; bj < 2; ++bj) {
      const FieldMatrix& block = images[bi * 2 + bj].std;
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) standard[(2 * bi + r) * 4 + 2 * bj + c] = block(r, c);
      }
    }
  }
  return {component(&WedderburnImage::triv, images), component(&WedderburnImage::sign, images),
          FieldMatrix(4, std::move(standard))};
}

PlatformMatrix matrix_wedderburn_inverse(const MatrixWedderburn& w) {
  std::vector<AlgebraElement> entries;
  for (std::size_t bi = 0; bi < 2; ++bi) {
    for (std::size_t bj = 0; bj < 2; ++bj) {
      FieldMatrix block(2, {w.standard(2 * bi, 2 * bj), w.standard(2 * bi, 2 * bj + 1),
                            w.standard(2 * bi + 1, 2 * bj), w.standard(2 * bi + 1, 2 * bj + 1)});
      entries.push_back(wedderburn_inverse({w.trivial(bi, bj), w.sign(bi, bj), std::move(block)}));
    }
  }
  return PlatformMatrix(2, std::move(entries));
}

bool is_invertible(const PlatformMatrix& m) { return singular_blocks(matrix_wedderburn(m)).empty(); }

PlatformMatrix platform_inv(const PlatformMatrix& m) {
  const MatrixWedderburn w = matrix_wedderburn(m);
  const auto t = gauss_inverse(w.trivial);
  const auto s = gauss_inverse(w.sign);
  const auto st = gauss_inverse(w.standard);
  if (!t || !s || !st) throw NotInvertible("singular component(s): " + join(singular_blocks(w)));
  return matrix_wedderburn_inverse({*t, *s, *st});
}

PlatformMatrix conjugate(const PlatformMatrix& t, const PlatformMatrix& m) { return t * m * platform_inv(t); }

std::map<Natural, unsigned> gl_order_factored(const PrimeModulus& p, unsigned k) {
  if (k < 1 || k > 4) throw std::invalid_argument("gl_order_factored: 1 <= k <= 4");
  const Natural q = p.value();
  // |GL_k| = q^{k(k-1)/2} prod_{i=1..k} (q^i - 1), with q^i - 1 = prod_{d | i} Phi_d(q).
  const Natural phi[5] = {0, q - 1, q + 1, q * q + q + 1, q * q + 1};
  std::vector<Natural> pieces(k * (k - 1) / 2, q);
  for (unsigned i = 1; i <= k; ++i) {
    for (unsigned d = 1; d <= i; ++d) {
      if (i % d == 0) pieces.push_back(phi[d]);
    }
  }
  return factorize_product(pieces);
}

Natural field_matrix_order(const FieldMatrix& m) {
  if (determinant(m).is_zero()) throw NotInvertible("matrix is singular");
  const auto id = FieldMatrix::identity(m.size(), m(0, 0));
  return order_from_factored(gl_order_factored(m(0, 0).prime(), static_cast<unsigned>(m.size())),
                             [&](const Natural& e) { return mat_pow(m, e) == id; });
}

Natural element_order(const PlatformMatrix& m) {
  const MatrixWedderburn w = matrix_wedderburn(m);
  const auto bad = singular_blocks(w);
  if (!bad.empty()) throw NotInvertible("singular component(s): " + join(bad));
  return lcm(lcm(field_matrix_order(w.trivial), field_matrix_order(w.sign)), field_matrix_order(w.standard));
}

Natural group_order(std::uint64_t p) {
  const PrimeModulus modulus(p);  // rejects 2 and 3
  const Natural q = modulus.value();
  return pow_natural(q, 8) * pow_natural(q - 1, 8) * pow_natural(q + 1, 4) * (q * q + 1) * (q * q + q + 1);
}

Natural multiplicative_order(const FieldElement& x) {
  if (x.is_zero()) throw NotInvertible("zero has no multiplicative order");
  return order_from_factored(factorize(Natural(x.modulus() - 1)),
                             [&](const Natural& e) { return pow(x, e).value() == 1; });
}

Natural multiplicative_order(const QuadExtElement& x) {
  if (x.is_zero()) throw NotInvertible("zero has no multiplicative order");
  const Natural p = x.c0().modulus();
  return order_from_factored(factorize_product({p - 1, p + 1}),
                             [&](const Natural& e) { return pow(x, e).is_one(); });
}

PlatformMatrix sample_platform_element(Rng& rng, const PrimeModulus& p, const SamplerConfig& config) {
  auto invertible_part = [&] {
    for (;;) {
      AlgebraElement a = random_algebra_element(rng, p);
      if (singular_components(wedderburn_forward(a)).empty()) return a;
    }
  };
  for (unsigned attempt = 0; attempt < config.retry_cap; ++attempt) {
    PlatformMatrix product = platform_identity(p);
    for (std::size_t s = 0; s < config.steps; ++s) {
      const auto kind = static_cast<StructuredKind>(uniform_below(rng, 3));
      AlgebraElement first = invertible_part();
      AlgebraElement second = kind == StructuredKind::Schur ? random_algebra_element(rng, p) : invertible_part();
      AlgebraElement third = random_algebra_element(rng, p);
      product = product * structured_invertible<AlgebraElement>(kind, {first, second, third}).matrix;
    }
    const Natural order = element_order(product);
    if (order >= config.min_order && (!config.max_order || order <= *config.max_order)) return product;
  }
  throw ThresholdUnreachable("no element with order in range after " + std::to_string(config.retry_cap) +
                             " draws");
}

TorusElement::TorusElement(FieldElement x, FieldElement y) : x_(x), y_(y) {
  if (x * x == y * y) throw InvalidParameters("torus element needs x^2 != y^2");
}

PlatformMatrix TorusElement::as_platform() const {
  const auto ax = AlgebraElement::scalar(x_);
  const auto ay = AlgebraElement::scalar(y_);
  return PlatformMatrix(2, {ax, ay, ay, ax});
}

FieldMatrix TorusElement::as_field() const { return FieldMatrix(2, {x_, y_, y_, x_}); }

TorusElement TorusElement::inverse() const {
  const FieldElement s = ncdh::inverse(x_ * x_ - y_ * y_);
  return TorusElement(x_ * s, -y_ * s);
}

TorusElement TorusElement::operator*(const TorusElement& o) const {
  return TorusElement(x_ * o.x_ + y_ * o.y_, x_ * o.y_ + y_ * o.x_);
}

bool torus_candidate_acceptable(const PlatformMatrix& x_matrix, const FieldElement& x, const FieldElement& y) {
  if (x * x == y * y) return false;
  const PlatformMatrix t = TorusElement(x, y).as_platform();
  return t * x_matrix != x_matrix * t;
}

TorusElement sample_torus(Rng& rng, const PlatformMatrix& x_matrix) {
  const PrimeModulus p = x_matrix(0, 0).prime();
  // The torus is spanned by I and [[0,1],[1,0]]; X commutes with all of it
  // iff it commutes with the swap.
  const auto z = AlgebraElement::zero(p), e = AlgebraElement::delta(Perm::identity(), p);
  const PlatformMatrix swap(2, {z, e, e, z});
  if (swap * x_matrix == x_matrix * swap) throw NoNoncommutingTorus("X commutes with every torus element");
  for (;;) {
    const FieldElement x(uniform_below(rng, p.value()), p);
    const FieldElement y(uniform_below(rng, p.value()), p);
    if (torus_candidate_acceptable(x_matrix, x, y)) return TorusElement(x, y);
  }
}

void append_bytes(std::vector<std::uint8_t>& out, const PlatformMatrix& m) {
  if (m.size() != 2) throw std::invalid_argument("platform matrices are 2x2");
  for (const auto& e : m.entries()) append_bytes(out, e);
}

std::vector<std::uint8_t> to_bytes(const PlatformMatrix& m) {
  std::vector<std::uint8_t> out;
  append_bytes(out, m);
  return out;
}

PlatformMatrix platform_from_bytes(std::span<const std::uint8_t> bytes, const PrimeModulus& p) {
  const std::size_t w = 6 * p.byte_width();
  if (bytes.size() != 4 * w) throw FormatError("platform matrix needs " + std::to_string(4 * w) + " bytes");
  std::vector<AlgebraElement> entries;
  for (std::size_t k = 0; k < 4; ++k) entries.push_back(algebra_from_bytes(bytes.subspan(k * w, w), p));
  return PlatformMatrix(2, std::move(entries));
}

}  // namespace ncdh
