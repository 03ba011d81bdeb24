#include "bracketlab/axioms.hpp"

#include <gtest/gtest.h>

#include "bracketlab/error.hpp"
#include "bracketlab/io.hpp"
#include "models.hpp"

namespace bracketlab {
namespace {

constexpr std::size_t kTrials = 2000;

SamplerConfig money(std::size_t trials = kTrials) {
  SamplerConfig cfg = SamplerConfig::money();
  cfg.trials = trials;
  cfg.threads = 4;
  return cfg;
}

SamplerConfig consumption(std::size_t trials = kTrials) {
  SamplerConfig cfg = SamplerConfig::consumption();
  cfg.trials = trials;
  cfg.threads = 4;
  return cfg;
}

AxiomVerdict verdict(const ModelSpec& m, AxiomId id, const SamplerConfig& cfg,
                     bool vacuous = false) {
  const AxiomReport r = check_axiom(id, make_oracle(m), cfg);
  if (vacuous) {
    EXPECT_EQ(r.satisfying, 0u) << to_string(id);
  } else {
    EXPECT_GT(r.satisfying, 0u) << to_string(id);
  }
  return r.verdict;
}

void expect_reverifiable(const AxiomReport& r, const PreferenceOracle& o) {
  for (const auto& c : r.violations) EXPECT_TRUE(reverify(c, o)) << c.description;
}

TEST(AxiomNamesTest, RoundTrip) {
  for (AxiomId id : all_axioms()) EXPECT_EQ(parse_axiom(to_string(id)), id);
  EXPECT_EQ(parse_axiom("multilinear-independence"), AxiomId::kMultilinearIndependence);
  EXPECT_EQ(parse_axiom("correlation_neglect"), AxiomId::kCorrelationNeglect);
  EXPECT_FALSE(parse_axiom("transitivity").has_value());
  EXPECT_EQ(all_axioms().size(), 18u);
}

TEST(SamplerConfigTest, Validation) {
  EXPECT_EQ(SamplerConfig::money().grid().size(), 41u);
  EXPECT_EQ(SamplerConfig::consumption().grid().size(), 20u);
  SamplerConfig bad = SamplerConfig::money();
  bad.grid_lo = 5.0;
  bad.grid_hi = 4.0;
  EXPECT_THROW(bad.validate(), Error);
  bad = SamplerConfig::money();
  bad.max_support = 5;
  EXPECT_THROW(bad.validate(), Error);
  bad = SamplerConfig::money();
  bad.weights = {1.0};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(TrialRngTest, StreamsDependOnSeedAndTrial) {
  auto a = trial_rng(0, 1);
  auto b = trial_rng(0, 1);
  auto c = trial_rng(0, 2);
  auto d = trial_rng(1, 1);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(CalibrateTest, FindsIndifferentLottery) {
  const auto o = make_oracle(testing::eu_money());
  const auto target = JointLottery::make({{-2.0, 0.0, 0.5}, {4.0, 0.0, 0.5}});
  const auto found =
      calibrate(o, target, [](double t) { return JointLottery::degenerate(t, 0.0); }, -10, 10);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(o.compare(*found, target).verdict, Verdict::kIndifferent);
  EXPECT_FALSE(
      calibrate(o, target, [](double t) { return JointLottery::degenerate(t, 0.0); }, 5, 10));
}

TEST(AxiomMatrixTest, ExpectedUtility) {
  const ModelSpec eu = testing::eu_money();
  for (AxiomId id : {AxiomId::kMonotonicity, AxiomId::kIndependence, AxiomId::kBiIndependence,
                     AxiomId::kMultilinearIndependence, AxiomId::kConditionalIndependence,
                     AxiomId::kCorrelationConsistency, AxiomId::kBroadBracketingNoRisk}) {
    EXPECT_EQ(verdict(eu, id, money()), AxiomVerdict::kNoViolationFound) << to_string(id);
  }
  // Under CARA u(x + y) narrowly equivalent swaps preserve indifference, so
  // the weak premise never produces a strict pair.
  EXPECT_EQ(verdict(eu, AxiomId::kWeakMultilinearIndependence, money(), true),
            AxiomVerdict::kNoViolationFound);
  const ModelSpec interacting =
            model::Eu{BivariateIndex::polynomial({{1.0, 1, 0}, {1.0, 0, 1}, {0.02, 1, 1}, {0.01, 0, 2}})};
  EXPECT_EQ(verdict(interacting, AxiomId::kWeakMultilinearIndependence, money()),
            AxiomVerdict::kNoViolationFound);
}

TEST(AxiomMatrixTest, NarrowBracketing) {
  const ModelSpec nb = testing::nb_loss_averse();
  const auto o = make_oracle(nb);
  for (AxiomId id : {AxiomId::kMultilinearIndependence, AxiomId::kIndependence}) {
    const AxiomReport r = check_axiom(id, o, money());
    EXPECT_EQ(r.verdict, AxiomVerdict::kViolated) << to_string(id);
    ASSERT_FALSE(r.violations.empty());
    expect_reverifiable(r, o);
  }
  for (AxiomId id : {AxiomId::kCorrelationNeglect, AxiomId::kConditionalIndependence,
                     AxiomId::kMonotonicity, AxiomId::kSymmetry}) {
    EXPECT_EQ(verdict(nb, id, money()), AxiomVerdict::kNoViolationFound) << to_string(id);
  }
  // NB sees only certainty equivalents, so the weak premise is vacuous.
  EXPECT_EQ(verdict(nb, AxiomId::kWeakMultilinearIndependence, money(), true),
            AxiomVerdict::kNoViolationFound);
}

TEST(AxiomMatrixTest, BackwardInduction) {
  const ModelSpec bib = testing::bib_money();
  for (AxiomId id : {AxiomId::kCorrelationConsistency, AxiomId::kConditionalIndependence}) {
    EXPECT_EQ(verdict(bib, id, money()), AxiomVerdict::kNoViolationFound) << to_string(id);
  }
  const auto o = make_oracle(bib);
  const AxiomReport r = check_axiom(AxiomId::kCorrelationNeglect, o, money());
  EXPECT_EQ(r.verdict, AxiomVerdict::kViolated);
  expect_reverifiable(r, o);
}

TEST(AxiomMatrixTest, BackwardInductionNeglectExample) {
  const ModelSpec bib = testing::bib_fixture();
  SamplerConfig cfg = consumption(1);
  cfg.injected.push_back(
      {AxiomId::kCorrelationNeglect, {JointLottery::make({{0.0, 0.0, 0.5}, {1.0, 4.0, 0.5}})},
       {}, "correlated coin"});
  const AxiomReport r = check_axiom(AxiomId::kCorrelationNeglect, make_oracle(bib), cfg);
  EXPECT_EQ(r.verdict, AxiomVerdict::kViolated);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().trial, 0u);
}

TEST(AxiomMatrixTest, ExpectedUtilityWithCorrelationNeglect) {
  const ModelSpec m = testing::eu_cn_fixture();
  for (AxiomId id : {AxiomId::kCorrelationNeglect, AxiomId::kMultilinearIndependence}) {
    EXPECT_EQ(verdict(m, id, money()), AxiomVerdict::kNoViolationFound) << to_string(id);
  }
}

TEST(AxiomInjectionTest, MultilinearExampleIsReportedFirst) {
  const ModelSpec nb = testing::nb_sqrt();
  const auto o = make_oracle(nb);
  auto prod = [](double x, double y) { return JointLottery::degenerate(x, y); };
  SamplerConfig cfg = consumption(1);
  cfg.injected.push_back({AxiomId::kMultilinearIndependence,
                          {prod(25.0, 20.25), prod(16.0, 25.0), prod(25.0, 0.0), prod(16.0, 9.0)},
                          {0.5},
                          "multilinear example"});
  const AxiomReport r = check_axiom(AxiomId::kMultilinearIndependence, o, cfg);
  ASSERT_EQ(r.verdict, AxiomVerdict::kViolated);
  const Counterexample& c = r.violations.front();
  EXPECT_EQ(c.trial, 0u);
  EXPECT_DOUBLE_EQ(c.alpha, 0.5);
  ASSERT_EQ(c.comparisons.size(), 3u);
  EXPECT_EQ(c.comparisons[0].verdict, Verdict::kStrictlyPrefers);
  EXPECT_EQ(c.comparisons[1].verdict, Verdict::kIndifferent);
  EXPECT_EQ(c.comparisons[2].verdict, Verdict::kStrictlyDispreferred);
  EXPECT_NEAR(c.comparisons[2].value_a, 30.0625, 1e-12);
  EXPECT_NEAR(c.comparisons[2].value_b, 32.0, 1e-12);
  EXPECT_TRUE(reverify(c, o));
}

TEST(AxiomDeterminismTest, ReportsDoNotDependOnThreads) {
  const auto o = make_oracle(testing::nb_loss_averse());
  SamplerConfig one = money(500);
  one.threads = 1;
  SamplerConfig many = money(500);
  many.threads = 7;
  for (AxiomId id : {AxiomId::kIndependence, AxiomId::kMultilinearIndependence}) {
    EXPECT_EQ(axiom_report_json(check_axiom(id, o, one)),
              axiom_report_json(check_axiom(id, o, many)));
  }
}

TEST(AxiomDeterminismTest, SeedChangesTheSample) {
  const auto o = make_oracle(testing::nb_loss_averse());
  SamplerConfig a = money(300);
  SamplerConfig b = money(300);
  b.seed = 99;
  EXPECT_NE(axiom_report_json(check_axiom(AxiomId::kIndependence, o, a)),
            axiom_report_json(check_axiom(AxiomId::kIndependence, o, b)));
}

TEST(AxiomTimeTest, CorrelationAversionFollowsCurvature) {
  const SamplerConfig cfg = consumption();
  const ModelSpec concave = testing::km_bib(UtilityIndex::exponential(0.5));
  const ModelSpec convex = testing::km_bib(UtilityIndex::exponential(-0.5));
  EXPECT_EQ(verdict(concave, AxiomId::kCorrelationAversion, cfg), AxiomVerdict::kNoViolationFound);
  const auto o = make_oracle(convex);
  const AxiomReport r = check_axiom(AxiomId::kCorrelationAversion, o, cfg);
  EXPECT_EQ(r.verdict, AxiomVerdict::kViolated);
  expect_reverifiable(r, o);
}

TEST(AxiomTimeTest, KmBibIsRecursiveAndStationary) {
  const ModelSpec m = testing::km_bib(UtilityIndex::exponential(0.5));
  for (AxiomId id : {AxiomId::kRecursivity, AxiomId::kHistoryIndependence,
                     AxiomId::kStationarity, AxiomId::kLongRunRiskAversion}) {
    EXPECT_EQ(verdict(m, id, consumption()), AxiomVerdict::kNoViolationFound) << to_string(id);
  }
}

TEST(AxiomTimeTest, OrdinalDominanceNeedsConstantAbsoluteRiskAversion) {
  const ModelSpec cara = model::KmBib{UtilityIndex::exponential(0.5), UtilityIndex::linear(), 0.9};
  EXPECT_EQ(verdict(cara, AxiomId::kOrdinalDominance, consumption()),
            AxiomVerdict::kNoViolationFound);
  const ModelSpec crra = model::KmBib{UtilityIndex::power(0.3), UtilityIndex::linear(), 0.9};
  const auto o = make_oracle(crra);
  const AxiomReport r = check_axiom(AxiomId::kOrdinalDominance, o, consumption());
  EXPECT_EQ(r.verdict, AxiomVerdict::kViolated);
  expect_reverifiable(r, o);
}

TEST(AxiomTimeTest, DiscountedUtilityWithoutRisk) {
  const auto u = UtilityIndex::power(0.5);
  const ModelSpec m = testing::km_bib(UtilityIndex::exponential(0.5), 0.9);
  SamplerConfig cfg = consumption();
  cfg.discounted = DiscountedCandidate{u, 0.9};
  EXPECT_EQ(verdict(m, AxiomId::kDiscountedUtilityNoRisk, cfg), AxiomVerdict::kNoViolationFound);
  cfg.discounted = DiscountedCandidate{u, 0.5};
  EXPECT_EQ(verdict(m, AxiomId::kDiscountedUtilityNoRisk, cfg), AxiomVerdict::kViolated);
  cfg.discounted.reset();
  EXPECT_THROW(check_axiom(AxiomId::kDiscountedUtilityNoRisk, make_oracle(m), cfg), Error);
}

TEST(AxiomErrorsTest, ExhaustedSamplerThrows) {
  PreferenceOracle broken;
  broken.compare = [](const JointLottery&, const JointLottery&) -> Preference {
    throw Error(ErrorKind::kDomainViolation, "nowhere defined");
  };
  try {
    check_axiom(AxiomId::kIndependence, broken, money(50));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPreconditionSamplerExhausted);
  }
}

TEST(AxiomErrorsTest, OracleErrorsAreSkippedTrials) {
  SamplerConfig cfg = money(200);
  cfg.grid_lo = -0.5;
  const AxiomReport r = check_axiom(AxiomId::kIndependence, make_oracle(testing::nb_sqrt()), cfg);
  EXPECT_GT(r.skipped, 0u);
  EXPECT_LE(r.skipped + r.built, r.trials);
}

}  // namespace
}  // namespace bracketlab
