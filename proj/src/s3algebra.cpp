#include "ncdh/s3algebra.hpp"

#include <algorithm>

namespace ncdh {

namespace {

constexpr std::array<std::array<int, 3>, Perm::kOrder> kMappings = {{
    {0, 1, 2},  // e
    {1, 2, 0},  // (123)
    {2, 0, 1},  // (132)
    {1, 0, 2},  // (12)
    {2, 1, 0},  // (13)
    {0, 2, 1},  // (23)
}};

constexpr std::array<const char*, Perm::kOrder> kNames = {"e", "(123)", "(132)", "(12)", "(13)", "(23)"};

std::size_t index_of_mapping(const std::array<int, 3>& m) {
  for (std::size_t i = 0; i < Perm::kOrder; ++i) {
    if (kMappings[i] == m) return i;
  }
  throw std::invalid_argument("not a permutation of {0,1,2}");
}

struct Tables {
  std::array<std::array<std::size_t, Perm::kOrder>, Perm::kOrder> compose{};
  std::array<std::size_t, Perm::kOrder> inverse{};
  std::array<int, Perm::kOrder> sign{};
  std::array<std::array<int, 4>, Perm::kOrder> rep{};
};

std::array<int, 4> mul2(const std::array<int, 4>& x, const std::array<int, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// Everything derives from pointwise composition of kMappings and the two
// generator matrices; nothing else is hand-entered.
Tables build_tables() {
  Tables t;
  for (std::size_t g = 0; g < Perm::kOrder; ++g) {
    for (std::size_t h = 0; h < Perm::kOrder; ++h) {
      std::array<int, 3> m{};
      for (int x = 0; x < 3; ++x) m[x] = kMappings[g][kMappings[h][x]];
      t.compose[g][h] = index_of_mapping(m);
    }
  }
  for (std::size_t g = 0; g < Perm::kOrder; ++g) {
    for (std::size_t h = 0; h < Perm::kOrder; ++h) {
      if (t.compose[g][h] == 0) t.inverse[g] = h;
    }
    int inversions = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) inversions += kMappings[g][i] > kMappings[g][j];
    }
    t.sign[g] = inversions % 2 ? -1 : 1;
  }
  // rho((123)) = [[0,-1],[1,-1]], rho((12)) = [[0,1],[1,0]]; close under products.
  const std::array<std::pair<std::size_t, std::array<int, 4>>, 2> generators = {{
      {1, {0, -1, 1, -1}},
      {3, {0, 1, 1, 0}},
  }};
  std::array<bool, Perm::kOrder> known{};
  t.rep[0] = {1, 0, 0, 1};
  known[0] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t g = 0; g < Perm::kOrder; ++g) {
      if (!known[g]) continue;
      for (const auto& [gen, mat] : generators) {
        const std::size_t target = t.compose[gen][g];
        if (!known[target]) {
          t.rep[target] = mul2(mat, t.rep[g]);
          known[target] = true;
          changed = true;
        }
      }
    }
  }
  return t;
}

const Tables& tables() {
  static const Tables t = build_tables();
  return t;
}

FieldElement from_int(int v, const PrimeModulus& p) { return FieldElement::from_signed(v, p); }

}  // namespace

Perm Perm::from_mapping(const std::array<int, 3>& images) { return Perm(index_of_mapping(images)); }

std::array<Perm, Perm::kOrder> Perm::all() {
  return {Perm(0), Perm(1), Perm(2), Perm(3), Perm(4), Perm(5)};
}

const std::array<int, 3>& Perm::mapping() const { return kMappings[index_]; }
int Perm::sign() const { return tables().sign[index_]; }
Perm Perm::inverse() const { return Perm(tables().inverse[index_]); }
std::string Perm::name() const { return kNames[index_]; }

Perm compose(const Perm& g, const Perm& h) { return Perm(tables().compose[g.index()][h.index()]); }

const std::array<int, 4>& standard_rep(const Perm& g) { return tables().rep[g.index()]; }

AlgebraElement::AlgebraElement(std::array<FieldElement, 6> coeffs) : coeffs_(coeffs) {
  for (const auto& c : coeffs_) {
    if (c.modulus() != coeffs_[0].modulus()) throw ModulusMismatch("algebra coefficients disagree on the modulus");
  }
}

AlgebraElement AlgebraElement::zero(const PrimeModulus& p) {
  const FieldElement z(0, p);
  return AlgebraElement({z, z, z, z, z, z});
}

AlgebraElement AlgebraElement::delta(const Perm& g, const PrimeModulus& p) {
  auto coeffs = zero(p).coeffs_;
  coeffs[g.index()] = FieldElement(1, p);
  return AlgebraElement(coeffs);
}

AlgebraElement AlgebraElement::scalar(const FieldElement& c) {
  auto coeffs = zero(c.prime()).coeffs_;
  coeffs[0] = c;
  return AlgebraElement(coeffs);
}

bool AlgebraElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FieldElement& c) { return c.is_zero(); });
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  auto c = coeffs_;
  for (std::size_t i = 0; i < 6; ++i) c[i] += o.coeffs_[i];
  return AlgebraElement(c);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  auto c = coeffs_;
  for (std::size_t i = 0; i < 6; ++i) c[i] -= o.coeffs_[i];
  return AlgebraElement(c);
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  const auto& table = tables().compose;
  auto c = zero(prime()).coeffs_;
  for (std::size_t h = 0; h < 6; ++h) {
    if (coeffs_[h].is_zero()) continue;
    for (std::size_t k = 0; k < 6; ++k) c[table[h][k]] += coeffs_[h] * o.coeffs_[k];
  }
  return AlgebraElement(c);
}

AlgebraElement AlgebraElement::operator-() const {
  auto c = coeffs_;
  for (auto& x : c) x = -x;
  return AlgebraElement(c);
}

AlgebraElement AlgebraElement::scaled(const FieldElement& s) const {
  auto c = coeffs_;
  for (auto& x : c) x *= s;
  return AlgebraElement(c);
}

AlgebraElement zero_like(const AlgebraElement& x) { return AlgebraElement::zero(x.prime()); }
AlgebraElement one_like(const AlgebraElement& x) { return AlgebraElement::delta(Perm::identity(), x.prime()); }

WedderburnImage wedderburn_forward(const AlgebraElement& a) {
  const PrimeModulus p = a.prime();
  FieldElement triv(0, p), sign(0, p);
  std::vector<FieldElement> std_entries(4, FieldElement(0, p));
  for (const Perm& g : Perm::all()) {
    const FieldElement c = a[g];
    triv += c;
    sign += g.sign() > 0 ? c : -c;
    const auto& rho = standard_rep(g);
    for (std::size_t k = 0; k < 4; ++k) std_entries[k] += c * from_int(rho[k], p);
  }
  return {triv, sign, FieldMatrix(2, std::move(std_entries))};
}

AlgebraElement wedderburn_inverse(const WedderburnImage& w) {
  const PrimeModulus p = w.triv.prime();
  const FieldElement sixth = inverse(FieldElement(6, p));
  const FieldElement two(2, p);
  auto coeffs = AlgebraElement::zero(p).coeffs();
  for (const Perm& g : Perm::all()) {
    // Tr(rho(g^{-1}) * std)
    const auto& r = standard_rep(g.inverse());
    FieldElement trace(0, p);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < 2; ++k) trace += from_int(r[i * 2 + k], p) * w.std(k, i);
    }
    const FieldElement signed_part = g.sign() > 0 ? w.sign : -w.sign;
    coeffs[g.index()] = sixth * (w.triv + signed_part + two * trace);
  }
  return AlgebraElement(coeffs);
}

std::vector<std::string> singular_components(const WedderburnImage& w) {
  std::vector<std::string> out;
  if (w.triv.is_zero()) out.emplace_back("trivial");
  if (w.sign.is_zero()) out.emplace_back("sign");
  if (determinant(w.std).is_zero()) out.emplace_back("standard");
  return out;
}

AlgebraElement inverse(const AlgebraElement& x) {
  const WedderburnImage w = wedderburn_forward(x);
  const auto bad = singular_components(w);
  if (!bad.empty()) {
    std::string names;
    for (const auto& b : bad) names += (names.empty() ? "" : ", ") + b;
    throw NotInvertible("algebra element has vanishing component(s): " + names);
  }
  return wedderburn_inverse({inverse(w.triv), inverse(w.sign), *gauss_inverse(w.std)});
}

FieldMatrix left_regular_matrix(const AlgebraElement& a) {
  const PrimeModulus p = a.prime();
  std::vector<FieldElement> entries(36, FieldElement(0, p));
  for (const Perm& k : Perm::all()) {
    const AlgebraElement column = a * AlgebraElement::delta(k, p);
    for (std::size_t i = 0; i < 6; ++i) entries[i * 6 + k.index()] = column.coeffs()[i];
  }
  return FieldMatrix(6, std::move(entries));
}

void append_bytes(std::vector<std::uint8_t>& out, const AlgebraElement& a) {
  for (const auto& c : a.coeffs()) append_bytes(out, c);
}

AlgebraElement algebra_from_bytes(std::span<const std::uint8_t> bytes, const PrimeModulus& p) {
  const std::size_t w = p.byte_width();
  if (bytes.size() != 6 * w) throw FormatError("algebra element needs " + std::to_string(6 * w) + " bytes");
  auto coeffs = AlgebraElement::zero(p).coeffs();
  for (std::size_t i = 0; i < 6; ++i) coeffs[i] = field_from_bytes(bytes.subspan(i * w, w), p);
  return AlgebraElement(coeffs);
}

AlgebraElement random_algebra_element(Rng& rng, const PrimeModulus& p) {
  auto coeffs = AlgebraElement::zero(p).coeffs();
  for (auto& c : coeffs) c = FieldElement(uniform_below(rng, p.value()), p);
  return AlgebraElement(coeffs);
}

}  // namespace ncdh
