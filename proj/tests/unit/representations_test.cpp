#include "bracketlab/representations.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "bracketlab/error.hpp"
#include "generators.hpp"
#include "models.hpp"

namespace bracketlab {
namespace {

using testing::Generator;

const OutcomeSpace kPositive = OutcomeSpace::box(0.0, kInf, 0.0, kInf);

MarginalLottery first(std::vector<MarginalAtom> a) {
  return MarginalLottery::make(std::move(a), Source::kFirst);
}
MarginalLottery second(std::vector<MarginalAtom> a) {
  return MarginalLottery::make(std::move(a), Source::kSecond);
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

TEST(OpenSetTest, ValidatesIntervals) {
  const auto h = OpenSet1D::make({{5.0, 7.0}, {1.0, 2.0}});
  EXPECT_TRUE(h.contains(1.5));
  EXPECT_FALSE(h.contains(2.0));
  EXPECT_EQ(h.finite_boundary(), (std::vector<double>{1.0, 2.0, 5.0, 7.0}));
  EXPECT_THROW(OpenSet1D::make({{-1.0, 1.0}}), Error);
  EXPECT_THROW(OpenSet1D::make({{1.0, 3.0}, {2.0, 4.0}}), Error);
  EXPECT_THROW(OpenSet1D::make({{2.0, 2.0}}), Error);
}

TEST(EvaluateTest, NarrowBracketingMultilinearExample) {
  const double eps = 0.5;
  const auto p = product(first({{25.0, 1.0}}), second({{(4.0 + eps) * (4.0 + eps), 1.0}}));
  EXPECT_NEAR(evaluate(testing::nb_sqrt(), p), 45.25, 1e-12);
}

TEST(EvaluateTest, DegenerateLotteryGivesTheRisklessIndex) {
  const auto w = BivariateIndex::polynomial({{1.0, 1, 1}, {2.0, 1, 0}, {1.0, 0, 2}});
  for (const ModelSpec& m :
       {ModelSpec{model::Eu{w}}, ModelSpec{model::EuCn{w}},
        ModelSpec{model::Nb{w, UtilityIndex::exponential(0.3), UtilityIndex::power(0.5)}},
        ModelSpec{model::Bib{w, UtilityIndex::power(0.5)}},
        ModelSpec{model::Fib{w, UtilityIndex::exponential(-0.2)}}}) {
    EXPECT_NEAR(evaluate(m, JointLottery::degenerate(2.0, 3.0)), 6.0 + 4.0 + 9.0, 1e-12)
        << family_name(m);
  }
}

TEST(EvaluateTest, BackwardInductionUsesConditionalCertaintyEquivalents) {
  const auto p = JointLottery::make({{1.0, 2.0, 0.5}, {1.0, 3.0, 0.5}});
  const double c = std::pow(0.5 * std::sqrt(2.0) + 0.5 * std::sqrt(3.0), 2.0);
  EXPECT_NEAR(evaluate(testing::bib_fixture(), p), 1.0 + c * c, 1e-12);
}

TEST(EvaluateTest, ForwardInductionSumsOverTheSecondSource) {
  // P = 1/2 (0, 1) + 1/4 (4, 1) + 1/4 (9, 2); FIB with w = x + y, v1 = sqrt:
  // y = 1 w.p. 3/4 with P_{1|1} = 2/3 d0 + 1/3 d4, y = 2 w.p. 1/4 with d9.
  const auto p = JointLottery::make({{0.0, 1.0, 0.5}, {4.0, 1.0, 0.25}, {9.0, 2.0, 0.25}});
  const ModelSpec fib = model::Fib{BivariateIndex::sum(UtilityIndex::linear()),
                                   testing::sqrt_index()};
  const double c1 = std::pow(2.0 / 3.0, 2.0);
  EXPECT_NEAR(evaluate(fib, p), 0.75 * (c1 + 1.0) + 0.25 * (9.0 + 2.0), 1e-12);
}

TEST(EvaluateTest, LambdaMixNeedsProductLotteries) {
  const ModelSpec m = model::LambdaMix{UtilityIndex::exponential(0.1), 0.5};
  try {
    evaluate(m, JointLottery::make({{0.0, 0.0, 0.5}, {1.0, 1.0, 0.5}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonProductLottery);
  }
  const auto p = product(first({{0.0, 0.5}, {2.0, 0.5}}), second({{1.0, 1.0}}));
  const auto u = [](double x) { return -std::exp(-0.1 * x) / 0.1; };
  const double broad = 0.5 * u(1.0) + 0.5 * u(3.0);
  const double narrow = 0.5 * u(0.0) + 0.5 * u(2.0) + u(1.0);
  EXPECT_NEAR(evaluate(m, p), 0.5 * broad + 0.5 * narrow, 1e-12);
}

TEST(EvaluateTest, TimeFamiliesRejectNegativeConsumption) {
  const ModelSpec edu = model::Edu{UtilityIndex::power(0.5), 0.9};
  try {
    evaluate(edu, JointLottery::degenerate(-1.0, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomainViolation);
  }
}

TEST(CompareTest, FramingNarrowBracketer) {
  const auto a = first({{2.40, 1.0}});
  const auto b = first({{10.0, 0.25}, {0.0, 0.75}});
  const auto c = second({{-7.50, 1.0}});
  const auto d = second({{-10.0, 0.75}, {0.0, 0.25}});
  const Preference pr = compare(testing::nb_loss_averse(), product(a, d), product(b, c));
  EXPECT_EQ(pr.verdict, Verdict::kStrictlyPrefers);
  EXPECT_NEAR(pr.value_a, 2.4 - 5.625, 1e-12);
  EXPECT_NEAR(pr.value_b, 0.625 - 7.5, 1e-12);
  EXPECT_EQ(compare(testing::eu_money(), product(b, c), product(a, d)).verdict,
            Verdict::kStrictlyPrefers);
}

TEST(CompareTest, BandSemantics) {
  EXPECT_EQ(compare_values(1.0, 1.0 + 5e-10).verdict, Verdict::kIndifferent);
  EXPECT_EQ(compare_values(1.0, 1.0 + 5e-9).verdict, Verdict::kStrictlyDispreferred);
  EXPECT_EQ(compare_values(1000.0, 1000.0 + 5e-7).verdict, Verdict::kIndifferent);
  EXPECT_EQ(compare_values(2.0, 1.0).verdict, Verdict::kStrictlyPrefers);
  Generator gen(31);
  for (int t = 0; t < 100; ++t) {
    const auto p = gen.joint(-5.0, 5.0);
    EXPECT_EQ(compare(testing::eu_money(), p, p).verdict, Verdict::kIndifferent);
  }
}

TEST(RepresentationPropertyTest, ExpectedUtilityIsLinearInMixtures) {
  Generator gen(32);
  for (int t = 0; t < 1000; ++t) {
    const auto p = gen.joint(-5.0, 5.0);
    const auto q = gen.joint(-5.0, 5.0);
    const double a = gen.uniform(0.0, 1.0);
    const ModelSpec m = testing::eu_money();
    const double lhs = evaluate(m, mix(a, p, q));
    const double rhs = a * evaluate(m, p) + (1.0 - a) * evaluate(m, q);
    EXPECT_LE(rel(lhs, rhs), 1e-12);
  }
}

TEST(RepresentationPropertyTest, EuCnIsMultilinearOnProducts) {
  Generator gen(33);
  const ModelSpec m = testing::eu_cn_fixture();
  for (int t = 0; t < 500; ++t) {
    const auto p1 = gen.marginal(-5.0, 5.0, Source::kFirst);
    const auto q1 = gen.marginal(-5.0, 5.0, Source::kFirst);
    const auto p2 = gen.marginal(-5.0, 5.0, Source::kSecond);
    const double a = gen.uniform(0.0, 1.0);
    const double lhs = evaluate(m, product(mix(a, p1, q1), p2));
    const double rhs = a * evaluate(m, product(p1, p2)) + (1 - a) * evaluate(m, product(q1, p2));
    EXPECT_LE(rel(lhs, rhs), 1e-12);
  }
}

TEST(RepresentationPropertyTest, InductionFormsMatchTheirProductVersions) {
  Generator gen(34);
  const auto w = testing::x_plus_y_squared();
  const auto v = testing::sqrt_index();
  for (int t = 0; t < 1000; ++t) {
    const auto p = gen.product_lottery(0.0, 10.0, 3, 0.5);
    const double bib = evaluate(model::Bib{w, v}, p);
    const double bib_cn = evaluate(model::BibCn{w, v}, p);
    const double fib = evaluate(model::Fib{w, v}, p);
    const double fib_cn = evaluate(model::FibCn{w, v}, p);
    EXPECT_LE(rel(bib, bib_cn), 1e-12);
    EXPECT_LE(rel(fib, fib_cn), 1e-12);
  }
}

TEST(RepresentationPropertyTest, GeneralizedFormsReduceToNarrowBracketing) {
  Generator gen(35);
  const auto w = BivariateIndex::polynomial({{1.0, 1, 0}, {1.0, 0, 1}, {0.01, 1, 1}});
  const auto v1 = UtilityIndex::power(0.5);
  const auto v2 = UtilityIndex::power(0.7);
  const ModelSpec nb = model::Nb{w, v1, v2};
  const ModelSpec gbib = model::GbibCn{w, v1, v2, OpenSet1D{}};
  const ModelSpec gfib = model::GfibCn{w, v1, v2, OpenSet1D{}};
  for (int t = 0; t < 1000; ++t) {
    const auto p = gen.joint(0.0, 10.0, 5, 0.5, kPositive);
    EXPECT_LE(rel(evaluate(gbib, p), evaluate(nb, p)), 1e-12);
    EXPECT_LE(rel(evaluate(gfib, p), evaluate(nb, p)), 1e-12);
  }
}

TEST(RepresentationPropertyTest, GeneralizedFormSwitchesToBackwardInductionInsideH) {
  Generator gen(36);
  const auto w = testing::x_plus_y_squared();
  const auto v1 = UtilityIndex::linear();
  const auto v2 = testing::sqrt_index();
  const ModelSpec gbib = model::GbibCn{w, v1, v2, OpenSet1D::make({{0.25, 20.0}})};
  const ModelSpec bib_cn = model::BibCn{w, v2};
  const ModelSpec nb = model::Nb{w, v1, v2};
  for (int t = 0; t < 1000; ++t) {
    const auto p = gen.joint(0.5, 10.0, 5, 0.5, kPositive);
    const double c2 = ce(v2, marginal(p, Source::kSecond));
    ASSERT_GT(c2, 0.25);
    EXPECT_LE(rel(evaluate(gbib, p), evaluate(bib_cn, p)), 1e-12);
  }
  const auto outside = JointLottery::make({{1.0, 0.0, 0.5}, {3.0, 0.0, 0.5}}, kPositive);
  EXPECT_EQ(evaluate(gbib, outside), evaluate(nb, outside));
}

TEST(RepresentationPropertyTest, KmBibWithIdentityCurvatureIsExpectedDiscountedUtility) {
  Generator gen(37);
  const auto u = UtilityIndex::power(0.5);
  const ModelSpec kmbib = model::KmBib{UtilityIndex::linear(), u, 0.9};
  const ModelSpec edu = model::Edu{u, 0.9};
  for (int t = 0; t < 1000; ++t) {
    const auto p = gen.joint(0.0, 10.0, 5, 0.5, kPositive);
    EXPECT_LE(rel(evaluate(kmbib, p), evaluate(edu, p)), 1e-12);
  }
}

TEST(RepresentationPropertyTest, KmBibDirectFormula) {
  // Independent evaluation: sum_x phi(u(x) + beta phi^-1(E_{2|x} phi(u(y)))) P1(x).
  Generator gen(38);
  const double beta = 0.8;
  auto u = [](double c) { return std::sqrt(c); };
  auto phi = [](double t) { return -std::exp(-0.7 * t); };
  auto phi_inv = [](double v) { return -std::log(-v) / 0.7; };
  const ModelSpec m = model::KmBib{UtilityIndex::exponential(0.7), UtilityIndex::power(0.5), beta};
  for (int t = 0; t < 300; ++t) {
    const auto p = gen.joint(0.0, 10.0, 5, 0.5, kPositive);
    double expected = 0.0;
    const MarginalLottery first_period = marginal(p, Source::kFirst);
    for (const auto& a : first_period.atoms()) {
      double e = 0.0;
      const MarginalLottery cond = conditional(p, Source::kFirst, a.x);
      for (const auto& c : cond.atoms()) e += c.p * phi(u(c.x));
      expected += a.p * phi(u(a.x) + beta * phi_inv(e)) / 0.7;
    }
    EXPECT_LE(rel(evaluate(m, p), expected), 1e-10);
  }
}

TEST(RepresentationPropertyTest, CrraCesWithEqualParametersRanksLikeDiscountedUtility) {
  Generator gen(39);
  const double rho = 0.5;
  const double beta = 0.4;
  const ModelSpec crra = model::CrraCesKmBib{rho, rho, beta};
  const ModelSpec edu = model::Edu{UtilityIndex::power(rho), beta / (1.0 - beta)};
  int strict = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto p = gen.joint(0.5, 10.0, 4, 0.5, kPositive);
    const auto q = gen.joint(0.5, 10.0, 4, 0.5, kPositive);
    const Verdict a = compare(crra, p, q, 1e-12).verdict;
    const Verdict b = compare(edu, p, q, 1e-12).verdict;
    EXPECT_EQ(a, b);
    strict += a != Verdict::kIndifferent;
  }
  EXPECT_GT(strict, 900);
}

TEST(RepresentationPropertyTest, CrraCesIsIncreasingForNegativeAlpha) {
  const ModelSpec m = model::CrraCesKmBib{0.5, -4.0, 0.9};
  const auto base = JointLottery::make({{1.0, 1.0, 0.5}, {2.0, 3.0, 0.5}}, kPositive);
  const auto better = JointLottery::make({{1.0, 1.5, 0.5}, {2.0, 3.0, 0.5}}, kPositive);
  EXPECT_EQ(compare(m, better, base).verdict, Verdict::kStrictlyPrefers);
  EXPECT_THROW(check_parameters(model::CrraCesKmBib{0.5, 0.0, 0.9}), Error);
}

TEST(RepresentationPropertyTest, ComparatorIsAffineInvariantInCertaintyEquivalentIndices) {
  Generator gen(40);
  const auto w = testing::x_plus_y_squared();
  const auto v = testing::sqrt_index();
  for (int t = 0; t < 300; ++t) {
    const double a = std::exp(gen.uniform(-2.0, 2.0));
    const double b = gen.uniform(-5.0, 5.0);
    const auto v_aff = affine(v, a, b);
    const auto p = gen.joint(0.0, 10.0, 4, 0.5, kPositive);
    const auto q = gen.joint(0.0, 10.0, 4, 0.5, kPositive);
    EXPECT_EQ(compare(model::Bib{w, v}, p, q).verdict, compare(model::Bib{w, v_aff}, p, q).verdict);
    EXPECT_EQ(compare(model::Nb{w, v, v}, p, q).verdict,
              compare(model::Nb{w, v_aff, v_aff}, p, q).verdict);
  }
}

TEST(ContinuityTest, BackwardInductionJumpsAtTheWeakLimit) {
  const ModelSpec m = testing::bib_fixture();
  const auto limit = JointLottery::make({{1.0, 2.0, 0.5}, {1.0, 3.0, 0.5}}, kPositive);
  const double n = 1e6;
  const auto pn = JointLottery::make({{1.0, 2.0, 0.5}, {1.0 - 1.0 / n, 3.0, 0.5}}, kPositive);
  const double gap = std::abs(evaluate(m, pn) - evaluate(m, limit));
  EXPECT_GT(gap, 1e-3);
  const double c = std::pow(0.5 * std::sqrt(2.0) + 0.5 * std::sqrt(3.0), 2.0);
  EXPECT_NEAR(gap, 7.5 - (1.0 + c * c), 1e-5);
}

TEST(ValidateModelTest, AffineBoundaryConditions) {
  const auto v1 = UtilityIndex::power(0.5);
  const auto additive = BivariateIndex::additive(v1, UtilityIndex::linear(), 1.0);
  const ValidationGrid positive{0.5, 10.0, 0.5, 10.0, 41};
  const auto ok = validate_model(model::GbibCn{additive, v1, v1, OpenSet1D::make({{2.0, 5.0}})},
                                 positive);
  EXPECT_TRUE(ok.passed);
  ASSERT_EQ(ok.boundaries.size(), 2u);
  EXPECT_NEAR(ok.boundaries[0].scale, 1.0, 1e-12);
  EXPECT_NEAR(ok.boundaries[0].shift, 2.0, 1e-12);

  const auto xy = BivariateIndex::polynomial({{1.0, 1, 1}});
  const auto lin = UtilityIndex::linear();
  const auto prod = validate_model(model::GbibCn{xy, lin, lin, OpenSet1D::make({{2.0, 5.0}})},
                                   positive);
  EXPECT_TRUE(prod.passed);
  EXPECT_NEAR(prod.boundaries[0].scale, 2.0, 1e-12);
  EXPECT_NEAR(prod.boundaries[0].shift, 0.0, 1e-12);

  const auto sq = BivariateIndex::polynomial({{1.0, 2, 0}, {1.0, 0, 1}});
  const auto bad = validate_model(model::GbibCn{sq, lin, lin, OpenSet1D::make({{2.0, 5.0}})},
                                  positive);
  EXPECT_FALSE(bad.passed);
  EXPECT_GT(bad.worst_deviation, 1e-3);
  EXPECT_FALSE(bad.failures.empty());
}

TEST(ValidateModelTest, SigmaFixtureIsAdmissible) {
  const auto r = validate_model(testing::gbib_sigma_fixture(), {-1.0, 1.0, 0.5, 10.0, 41});
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

}  // namespace
}  // namespace bracketlab
