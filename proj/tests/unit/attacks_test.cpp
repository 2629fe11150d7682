#include <gtest/gtest.h>

#include "ncdh/attacks.hpp"
#include "unit/oracles.hpp"

namespace ncdh {
namespace {

FieldMatrix fm(const PrimeModulus& p, std::initializer_list<std::int64_t> v) {
  std::vector<FieldElement> e;
  for (auto x : v) e.push_back(FieldElement::from_signed(x, p));
  return FieldMatrix(2, std::move(e));
}

TEST(Bsgs, Examples) {
  const PrimeModulus p11(11), p7(7);
  EXPECT_EQ(dlog_bsgs(FieldElement(2, p11), FieldElement(7, p11), 10), 7u);
  EXPECT_EQ(dlog_bsgs(FieldElement(2, p11), FieldElement(1, p11), 10), 0u);
  // 3 is not in the subgroup generated by 2 mod 7.
  EXPECT_EQ(dlog_bsgs(FieldElement(2, p7), FieldElement(3, p7), 3), std::nullopt);
}

TEST(Bsgs, AgreesWithExhaustiveSearch) {
  Rng rng(1);
  const PrimeModulus p(1009);
  for (int i = 0; i < 200; ++i) {
    const FieldElement g(1 + uniform_below(rng, 1008), p), h(1 + uniform_below(rng, 1008), p);
    std::optional<std::uint64_t> expected;
    for (std::uint64_t x = 0; x < 1008; ++x) {
      if (oracle::pow_by_repetition(g.value(), x, 1009) == h.value()) {
        expected = x;
        break;
      }
    }
    ASSERT_EQ(dlog_bsgs(g, h, 1008), expected);
  }
}

TEST(Crt, Merge) {
  EXPECT_EQ(merge({2, 3}, {3, 5}), (Congruence{8, 15}));
  EXPECT_EQ(merge({1, 4}, {3, 6}), (Congruence{9, 12}));
  EXPECT_EQ(merge({0, 4}, {1, 6}), std::nullopt);
  EXPECT_EQ(merge({5, 10}, {5, 10}), (Congruence{5, 10}));
}

TEST(CharPoly, ExampleAndSimilarityInvariance) {
  const PrimeModulus p7(7), p101(101);
  EXPECT_EQ(charpoly2(fm(p7, {1, 2, 3, 4})), (CharPoly{FieldElement(5, p7), FieldElement(5, p7)}));
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    auto draw = [&] { return fm(p101, {std::int64_t(uniform_below(rng, 101)), std::int64_t(uniform_below(rng, 101)),
                                       std::int64_t(uniform_below(rng, 101)), std::int64_t(uniform_below(rng, 101))}); };
    const auto m = draw(), s = draw();
    const auto sinv = gauss_inverse(s);
    if (!sinv) continue;
    ASSERT_EQ(charpoly2(s * m * *sinv), charpoly2(m));
  }
}

TEST(DetReduction, Examples) {
  const PrimeModulus p11(11);
  const auto x = fm(p11, {2, 0, 0, 1});
  const CommutativeInstance inst{p11, x, mat_pow(x, Natural(5)), x};
  EXPECT_EQ(det_reduction(inst), (Congruence{5, 10}));
  const auto sl = fm(p11, {2, 0, 0, 6});  // det 1
  EXPECT_THROW(det_reduction({p11, sl, sl, sl}), Uninformative);
  EXPECT_THROW(det_reduction({p11, fm(p11, {3, 0, 0, 1}), fm(p11, {2, 0, 0, 1}), x}), Exhausted);
}

TEST(DetReduction, HonestTranscriptsContainSecret) {
  Rng rng(3);
  const PrimeModulus p(1009);
  for (int i = 0; i < 100; ++i) {
    const auto tr = make_commutative_transcript(p, rng);
    try {
      ASSERT_TRUE(det_reduction(tr.instance).contains(tr.a));
    } catch (const Uninformative&) {
    }
  }
}

TEST(EigenAttack, SplitExample) {
  const PrimeModulus p7(7);
  const auto x = fm(p7, {2, 0, 0, 3});
  const TorusElement t(FieldElement(1, p7), FieldElement(2, p7));
  const auto tm = t.as_field(), tinv = t.inverse().as_field();
  const auto ya = tm * mat_pow(x, Natural(3)) * tinv;
  const auto yb = x * x;
  const auto r = eigen_attack({p7, x, ya, yb});
  ASSERT_TRUE(r.recovered_a && r.a_modulus && r.recovered_t && r.recovered_k);
  EXPECT_EQ(*r.a_modulus, 6);
  EXPECT_EQ(*r.recovered_a % 6, 3);
  const auto trec = r.recovered_t->as_field();
  EXPECT_EQ(trec * mat_pow(x, *r.recovered_a) * r.recovered_t->inverse().as_field(), ya);
  EXPECT_EQ(*r.recovered_k, tm * mat_pow(yb, Natural(3)) * tinv);
}

TEST(EigenAttack, Rejections) {
  const PrimeModulus p7(7);
  const auto two = fm(p7, {2, 0, 0, 2});
  EXPECT_THROW(eigen_attack({p7, two, two, two}), ScalarX);
  const auto jordan = fm(p7, {2, 1, 0, 2});
  EXPECT_THROW(eigen_attack({p7, jordan, jordan, jordan}), RepeatedEigenvalue);
}

TEST(EigenAttack, HonestTranscriptsBothSplittings) {
  Rng rng(4);
  for (auto split : {EigenSplit::Split, EigenSplit::Irreducible}) {
    for (std::uint64_t pv : {101u, 1009u, 65537u}) {
      const PrimeModulus p(pv);
      for (int i = 0; i < 10; ++i) {
        const auto tr = make_commutative_transcript(p, rng, split);
        const auto r = eigen_attack(tr.instance);
        ASSERT_TRUE(r.recovered_k);
        ASSERT_EQ(*r.recovered_k, tr.k);
        ASSERT_EQ(*r.recovered_a % tr.n, tr.a % tr.n);
      }
    }
  }
}

TEST(Candidates, Enumeration) {
  EXPECT_EQ(candidate_count(ScanMode::Naive, 31), 961u);
  EXPECT_EQ(candidate_count(ScanMode::Normalized, 31), 30u);
  EXPECT_EQ(candidate_at(ScanMode::Normalized, 31, 0), (std::pair<std::uint64_t, std::uint64_t>{0, 1}));
  EXPECT_EQ(candidate_at(ScanMode::Normalized, 31, 1), (std::pair<std::uint64_t, std::uint64_t>{1, 0}));
  EXPECT_EQ(candidate_at(ScanMode::Normalized, 31, 2), (std::pair<std::uint64_t, std::uint64_t>{1, 2}));
  EXPECT_EQ(candidate_at(ScanMode::Naive, 31, 0), std::nullopt);  // (0, 0)
  EXPECT_EQ(candidate_at(ScanMode::Naive, 31, 1), (std::pair<std::uint64_t, std::uint64_t>{0, 1}));
  EXPECT_EQ(to_string(scan_mode_from_string("normalized")), "normalized");
  EXPECT_THROW(scan_mode_from_string("fast"), std::invalid_argument);
}

const PublicParams& params31() {
  static const PublicParams params = setup(PrimeModulus(31), 5, {.steps = 2, .min_order = 3, .max_order = Natural(1) << 14});
  return params;
}

TEST(Algorithm41, RecoversSharedSecretInBothModes) {
  const auto& params = params31();
  Rng rng(6);
  const auto alice = keygen(params, rng), bob = keygen(params, rng);
  const auto k = derive_shared(alice, bob.y).k;
  for (auto mode : {ScanMode::Naive, ScanMode::Normalized}) {
    const auto r = algorithm41(params, alice.y, bob.y, mode);
    ASSERT_TRUE(r.recovered_k);
    EXPECT_EQ(*r.recovered_k, k) << to_string(mode);
    EXPECT_EQ(r.table_size, params.n);
    EXPECT_EQ(r.ops, r.table_size + r.candidates_tested);
    const auto t = r.recovered_t->as_platform();
    EXPECT_EQ(t * mat_pow(params.x, *r.recovered_a) * platform_inv(t), alice.y);
  }
}

TEST(Algorithm41, ThreadsAgree) {
  const auto& params = params31();
  Rng rng(7);
  const auto alice = keygen(params, rng), bob = keygen(params, rng);
  const auto single = algorithm41(params, alice.y, bob.y, ScanMode::Naive);
  const auto multi = algorithm41(params, alice.y, bob.y, ScanMode::Naive, {.threads = 4});
  EXPECT_EQ(*multi.recovered_k, *single.recovered_k);
}

TEST(Algorithm41, ExhaustedAndResourceCap) {
  const auto& params = params31();
  Rng rng(8);
  const auto bob = keygen(params, rng);
  // A token outside every conjugate of <X>: X itself is in <X>, so use a
  // matrix whose order does not divide n.
  PlatformMatrix stranger = platform_identity(params.p);
  for (;;) {
    PlatformMatrix m(2, {random_algebra_element(rng, params.p), random_algebra_element(rng, params.p),
                         random_algebra_element(rng, params.p), random_algebra_element(rng, params.p)});
    if (is_invertible(m) && params.n % element_order(m) != 0) {
      stranger = m;
      break;
    }
  }
  EXPECT_THROW(algorithm41(params, stranger, bob.y, ScanMode::Normalized), Exhausted);
  EXPECT_THROW(algorithm41(params, bob.y, bob.y, ScanMode::Naive, {.max_table = 2}), ResourceCap);
  EXPECT_THROW(algorithm41(params, bob.y, bob.y, ScanMode::Naive, {.max_p_naive = 29}), ResourceCap);
}

TEST(NcReductionScan, DeterminantPowerRuleFails) {
  Rng rng(9);
  const auto report = nc_reduction_scan(PrimeModulus(101), 200, rng);
  EXPECT_EQ(report.trials, 200u);
  EXPECT_GT(report.rate(), 0.5);
}

}  // namespace
}  // namespace ncdh
