#include <gtest/gtest.h>

#include "ncdh/field.hpp"
#include "unit/oracles.hpp"

namespace ncdh {
namespace {

const PrimeModulus P7(7);

FieldElement f7(std::uint64_t v) { return FieldElement(v, P7); }

TEST(PrimeModulus, RejectsExcludedCharacteristicAndComposites) {
  EXPECT_THROW(PrimeModulus(2), CharacteristicExcluded);
  EXPECT_THROW(PrimeModulus(3), CharacteristicExcluded);
  EXPECT_THROW(PrimeModulus(9), InvalidModulus);
  EXPECT_THROW(PrimeModulus(1), InvalidModulus);
  EXPECT_THROW(PrimeModulus((std::uint64_t{1} << 63) + 29), InvalidModulus);
  EXPECT_NO_THROW(PrimeModulus(9223372036854775783ULL));  // largest prime below 2^63
}

TEST(PrimeModulus, ByteWidth) {
  EXPECT_EQ(PrimeModulus(7).byte_width(), 1u);
  EXPECT_EQ(PrimeModulus(251).byte_width(), 1u);
  EXPECT_EQ(PrimeModulus(257).byte_width(), 2u);
  EXPECT_EQ(PrimeModulus(9223372036854775783ULL).byte_width(), 8u);
}

TEST(FieldArith, Examples) {
  EXPECT_EQ((f7(3) + f7(4)).value(), 0u);
  EXPECT_EQ((f7(4) * f7(5)).value(), 6u);
  EXPECT_EQ((-f7(0)).value(), 0u);
  EXPECT_EQ((f7(2) - f7(5)).value(), 4u);
}

TEST(FieldArith, ModulusMismatch) {
  const FieldElement a(1, PrimeModulus(5));
  EXPECT_THROW(a + f7(1), ModulusMismatch);
  EXPECT_THROW(a * f7(1), ModulusMismatch);
}

TEST(FieldInverse, Examples) {
  EXPECT_EQ(inverse(f7(1)).value(), 1u);
  EXPECT_EQ(inverse(f7(4)).value(), 2u);
  EXPECT_THROW(inverse(f7(0)), NotInvertible);
}

TEST(FieldInverse, MatchesSearchOracle) {
  const PrimeModulus p(101);
  for (std::uint64_t a = 1; a < 101; ++a) {
    EXPECT_EQ(inverse(FieldElement(a, p)).value(), *oracle::inverse_by_search(a, 101));
  }
}

TEST(FieldInverse, NearTopOfRange) {
  const PrimeModulus p(9223372036854775783ULL);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const FieldElement a(1 + uniform_below(rng, p.value() - 1), p);
    EXPECT_EQ((inverse(a) * a).value(), 1u);
    EXPECT_EQ(pow(a, p.value() - 1).value(), 1u);
  }
}

TEST(FieldPow, Examples) {
  EXPECT_EQ(pow(f7(5), std::uint64_t{0}).value(), 1u);
  EXPECT_EQ(pow(f7(0), std::uint64_t{0}).value(), 1u);
  EXPECT_EQ(pow(f7(3), std::uint64_t{4}).value(), 4u);
  for (std::uint64_t a = 1; a < 7; ++a) EXPECT_EQ(pow(f7(a), std::uint64_t{6}).value(), 1u);
}

TEST(FieldPow, NaturalExponentAgreesWithRepetition) {
  const PrimeModulus p(101);
  for (std::uint64_t a = 0; a < 101; a += 7) {
    for (std::uint64_t e = 0; e < 300; e += 13) {
      EXPECT_EQ(pow(FieldElement(a, p), Natural(e)).value(), oracle::pow_by_repetition(a, e, 101));
    }
  }
  // 128-bit exponent: reduce by Fermat.
  const Natural big = (Natural(1) << 127) + 12345;
  const FieldElement g(3, p);
  EXPECT_EQ(pow(g, big), pow(g, static_cast<std::uint64_t>(big % 100)));
}

TEST(FieldSqrt, Examples) {
  auto values = [](const std::vector<FieldElement>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& e : v) out.push_back(e.value());
    return out;
  };
  EXPECT_EQ(values(sqrt_all(f7(1))), (std::vector<std::uint64_t>{1, 6}));
  EXPECT_EQ(values(sqrt_all(f7(2))), (std::vector<std::uint64_t>{3, 4}));
  EXPECT_TRUE(sqrt_all(f7(3)).empty());
  EXPECT_EQ(values(sqrt_all(f7(0))), (std::vector<std::uint64_t>{0}));
}

TEST(FieldSqrt, ExhaustiveAgainstSearchForSmallPrimes) {
  for (std::uint64_t p = 5; p < 1000; ++p) {
    if (!is_prime_u64(p)) continue;
    const PrimeModulus m(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      std::vector<std::uint64_t> got;
      for (const auto& r : sqrt_all(FieldElement(a, m))) got.push_back(r.value());
      ASSERT_EQ(got, oracle::square_roots_by_search(a, p)) << "p=" << p << " a=" << a;
    }
  }
}

TEST(FieldSqrt, LargeTonelliShanksPrime) {
  // p - 1 = 2^33 * odd: exercises many Tonelli-Shanks rounds.
  const PrimeModulus p(4611685941117976577ULL);
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const FieldElement r(uniform_below(rng, p.value()), p);
    const auto roots = sqrt_all(r * r);
    ASSERT_FALSE(roots.empty());
    for (const auto& s : roots) EXPECT_EQ(s * s, r * r);
  }
}

TEST(FindNonresidue, Examples) {
  EXPECT_EQ(find_nonresidue(PrimeModulus(5)).value(), 2u);
  EXPECT_EQ(find_nonresidue(PrimeModulus(7)).value(), 3u);
  EXPECT_EQ(find_nonresidue(PrimeModulus(11)).value(), 2u);
}

TEST(FieldProperties, SampledAxioms) {
  const PrimeModulus p(1000003);
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const FieldElement a(uniform_below(rng, p.value()), p), b(uniform_below(rng, p.value()), p),
        c(uniform_below(rng, p.value()), p);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + b, b + a);
    if (!a.is_zero()) {
      ASSERT_EQ((inverse(a) * a).value(), 1u);
      ASSERT_EQ(pow(a, p.value() - 1).value(), 1u);
    }
  }
}

TEST(FieldSerialization, FixedWidthBigEndianHex) {
  const PrimeModulus p(65537);  // 17 bits -> 3 bytes
  EXPECT_EQ(to_hex(FieldElement(258, p)), "000102");
  EXPECT_EQ(field_from_hex("000102", p).value(), 258u);
  EXPECT_THROW(field_from_hex("0102", p), FormatError);
  EXPECT_THROW(field_from_hex("010001", p), FormatError);  // 65537 is not canonical
  EXPECT_THROW(field_from_hex("00010G", p), FormatError);
}

const QuadExtParams kExt7(FieldElement(3, P7));

QuadExtElement q7(std::uint64_t c0, std::uint64_t c1) { return QuadExtElement(f7(c0), f7(c1), kExt7); }

TEST(QuadExt, RejectsResidue) { EXPECT_THROW(QuadExtParams(f7(2)), InvalidParameters); }

TEST(QuadExt, Examples) {
  EXPECT_EQ(q7(0, 1) * q7(0, 1), q7(3, 0));
  EXPECT_EQ(inverse(q7(0, 1)), q7(0, 5));
  EXPECT_EQ(q7(4, 2) * q7(1, 0), q7(4, 2));
  EXPECT_THROW(inverse(q7(0, 0)), NotInvertible);
}

TEST(QuadExt, FrobeniusNormAndInverse) {
  const PrimeModulus p(1009);
  const QuadExtParams ext(p);
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const QuadExtElement x(FieldElement(uniform_below(rng, 1009), p), FieldElement(uniform_below(rng, 1009), p), ext);
    const QuadExtElement y(FieldElement(uniform_below(rng, 1009), p), FieldElement(uniform_below(rng, 1009), p), ext);
    ASSERT_EQ(pow(x, Natural(1009)), x.conjugate());
    ASSERT_EQ((x * y).norm(), x.norm() * y.norm());
    ASSERT_EQ(x * y, y * x);
    if (!x.is_zero()) ASSERT_TRUE((inverse(x) * x).is_one());
  }
}

}  // namespace
}  // namespace ncdh
