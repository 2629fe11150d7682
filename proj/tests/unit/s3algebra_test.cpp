#include <gtest/gtest.h>

#include "ncdh/s3algebra.hpp"
#include "unit/oracles.hpp"

namespace ncdh {
namespace {

const PrimeModulus P7(7);
const PrimeModulus P101(101);

const Perm kE = Perm(0), kR = Perm(1), kR2 = Perm(2), kS12 = Perm(3), kS13 = Perm(4), kS23 = Perm(5);

AlgebraElement delta(const Perm& g, const PrimeModulus& p = P7) { return AlgebraElement::delta(g, p); }

TEST(Perm, BasisOrderAndNames) {
  EXPECT_EQ(kR.name(), "(123)");
  EXPECT_EQ(kS23.name(), "(23)");
  EXPECT_EQ(kR.mapping(), (std::array<int, 3>{1, 2, 0}));
  EXPECT_EQ(kS12.sign(), -1);
  EXPECT_EQ(kR2.sign(), 1);
}

TEST(Perm, CompositionExamples) {
  for (const Perm& g : Perm::all()) EXPECT_EQ(compose(kE, g), g);
  EXPECT_EQ(compose(kS12, kR), kS23);
  EXPECT_EQ(compose(kR, kR2), kE);
}

TEST(Perm, GroupAxiomsExhaustive) {
  for (const Perm& a : Perm::all()) {
    for (const Perm& b : Perm::all()) {
      // Pointwise definition: (a o b)(x) = a(b(x)).
      const Perm ab = compose(a, b);
      for (int x = 0; x < 3; ++x) ASSERT_EQ(ab.mapping()[x], a.mapping()[b.mapping()[x]]);
      for (const Perm& c : Perm::all()) ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    }
  }
  for (const Perm& g : Perm::all()) {
    int inverses = 0;
    for (const Perm& h : Perm::all()) inverses += compose(g, h) == kE;
    EXPECT_EQ(inverses, 1);
    EXPECT_EQ(compose(g, g.inverse()), kE);
    EXPECT_EQ(compose(g.inverse(), g), kE);
  }
}

TEST(StandardRep, PinnedGeneratorsAndHomomorphism) {
  EXPECT_EQ(standard_rep(kR), (std::array<int, 4>{0, -1, 1, -1}));
  EXPECT_EQ(standard_rep(kS12), (std::array<int, 4>{0, 1, 1, 0}));
  EXPECT_EQ(standard_rep(kE), (std::array<int, 4>{1, 0, 0, 1}));
  for (const Perm& g : Perm::all()) {
    for (const Perm& h : Perm::all()) {
      const auto& x = standard_rep(g);
      const auto& y = standard_rep(h);
      const std::array<int, 4> xy = {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                     x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
      ASSERT_EQ(xy, standard_rep(compose(g, h)));
    }
  }
}

TEST(AlgebraMul, Examples) {
  const AlgebraElement x = AlgebraElement(
      {FieldElement(1, P7), FieldElement(2, P7), FieldElement(3, P7), FieldElement(4, P7), FieldElement(5, P7),
       FieldElement(6, P7)});
  EXPECT_EQ(delta(kE) * x, x);
  EXPECT_EQ(x * delta(kE), x);
  EXPECT_EQ(delta(kR) * delta(kR), delta(kR2));
  const AlgebraElement u = delta(kE) + delta(kS12);
  EXPECT_EQ(u * u, delta(kE).scaled(FieldElement(2, P7)) + delta(kS12).scaled(FieldElement(2, P7)));
}

TEST(AlgebraMul, MatchesPointwiseConvolutionAndIsNoncommutative) {
  Rng rng(2);
  bool saw_noncommuting = false;
  for (int i = 0; i < 500; ++i) {
    const auto a = random_algebra_element(rng, P101), b = random_algebra_element(rng, P101),
               c = random_algebra_element(rng, P101);
    ASSERT_EQ(a * b, oracle::convolve(a, b));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    saw_noncommuting |= a * b != b * a;
  }
  EXPECT_TRUE(saw_noncommuting);
}

TEST(Wedderburn, ForwardExamples) {
  const auto id = wedderburn_forward(delta(kE));
  EXPECT_EQ(id.triv.value(), 1u);
  EXPECT_EQ(id.sign.value(), 1u);
  EXPECT_EQ(id.std, FieldMatrix::identity(2, FieldElement(0, P7)));

  const auto s = wedderburn_forward(delta(kS12));
  EXPECT_EQ(s.triv.value(), 1u);
  EXPECT_EQ(s.sign.value(), 6u);
  EXPECT_EQ(s.std, FieldMatrix(2, {FieldElement(0, P7), FieldElement(1, P7), FieldElement(1, P7), FieldElement(0, P7)}));

  AlgebraElement sum = AlgebraElement::zero(P7);
  for (const Perm& g : Perm::all()) sum = sum + delta(g);
  const auto w = wedderburn_forward(sum);
  EXPECT_EQ(w.triv.value(), 6u);
  EXPECT_EQ(w.sign.value(), 0u);
  EXPECT_EQ(w.std, FieldMatrix::zero(2, FieldElement(0, P7)));
}

TEST(Wedderburn, InverseExamples) {
  const FieldElement z(0, P7), o(1, P7);
  EXPECT_EQ(wedderburn_inverse({o, o, FieldMatrix::identity(2, z)}), delta(kE));
  EXPECT_EQ(wedderburn_inverse({z, z, FieldMatrix::zero(2, z)}), AlgebraElement::zero(P7));
}

TEST(Wedderburn, HomomorphismOnAllBasisPairs) {
  for (const Perm& g : Perm::all()) {
    for (const Perm& h : Perm::all()) {
      ASSERT_EQ(wedderburn_forward(delta(g, P101) * delta(h, P101)),
                wedderburn_forward(delta(g, P101)) * wedderburn_forward(delta(h, P101)));
    }
  }
}

TEST(Wedderburn, RoundTripsBothWays) {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_algebra_element(rng, P101);
    ASSERT_EQ(wedderburn_inverse(wedderburn_forward(a)), a);
    const WedderburnImage w{FieldElement(uniform_below(rng, 101), P101), FieldElement(uniform_below(rng, 101), P101),
                            FieldMatrix(2, {FieldElement(uniform_below(rng, 101), P101), FieldElement(uniform_below(rng, 101), P101),
                                            FieldElement(uniform_below(rng, 101), P101), FieldElement(uniform_below(rng, 101), P101)})};
    ASSERT_EQ(wedderburn_forward(wedderburn_inverse(w)), w);
  }
}

TEST(AlgebraInverse, Examples) {
  for (const Perm& g : Perm::all()) EXPECT_EQ(inverse(delta(g)), delta(g.inverse()));
  const auto two = AlgebraElement::scalar(FieldElement(2, P7));
  EXPECT_EQ(inverse(two), AlgebraElement::scalar(FieldElement(4, P7)));
  try {
    inverse(delta(kE) + delta(kS12));
    FAIL() << "expected NotInvertible";
  } catch (const NotInvertible& e) {
    EXPECT_NE(std::string(e.what()).find("sign"), std::string::npos);
    EXPECT_EQ(std::string(e.what()).find("trivial"), std::string::npos);
  }
}

TEST(AlgebraInverse, VerdictMatchesRegularRepresentation) {
  // Small p so singular elements are common enough to exercise both verdicts.
  for (std::uint64_t prime : {5ULL, 7ULL, 101ULL}) {
    const PrimeModulus p(prime);
    Rng rng(prime);
    int singular = 0;
    for (int i = 0; i < 400; ++i) {
      const auto a = random_algebra_element(rng, p);
      const bool expect = oracle::regular_rep_invertible(a);
      bool ok = true;
      try {
        const auto b = inverse(a);
        ASSERT_EQ(a * b, AlgebraElement::delta(Perm::identity(), p));
        ASSERT_EQ(b * a, AlgebraElement::delta(Perm::identity(), p));
      } catch (const NotInvertible&) {
        ok = false;
      }
      ASSERT_EQ(ok, expect);
      singular += !ok;
    }
    if (prime < 100) EXPECT_GT(singular, 0);
  }
}

TEST(AlgebraSerialization, SixFixedWidthCoefficients) {
  const PrimeModulus p(257);
  const AlgebraElement a({FieldElement(1, p), FieldElement(2, p), FieldElement(256, p), FieldElement(0, p),
                          FieldElement(5, p), FieldElement(255, p)});
  std::vector<std::uint8_t> bytes;
  append_bytes(bytes, a);
  EXPECT_EQ(bytes, (std::vector<std::uint8_t>{0, 1, 0, 2, 1, 0, 0, 0, 0, 5, 0, 255}));
  EXPECT_EQ(algebra_from_bytes(bytes, p), a);
  bytes.pop_back();
  EXPECT_THROW(algebra_from_bytes(bytes, p), FormatError);
}

}  // namespace
}  // namespace ncdh
