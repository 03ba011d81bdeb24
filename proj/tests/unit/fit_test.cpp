#include "bracketlab/fit.hpp"

#include <gtest/gtest.h>

#include "bracketlab/error.hpp"
#include "bracketlab/experiments.hpp"
#include "generators.hpp"
#include "models.hpp"

namespace bracketlab {
namespace {

const std::filesystem::path kFixtures = BRACKETLAB_FIXTURES;

Choice choose(const ModelSpec& m, const JointLottery& a, const JointLottery& b) {
  switch (compare(m, a, b).verdict) {
    case Verdict::kStrictlyPrefers:
      return Choice::kA;
    case Verdict::kStrictlyDispreferred:
      return Choice::kB;
    case Verdict::kIndifferent:
      break;
  }
  return Choice::kIndifferent;
}

Subject synthetic(const std::string& id, const ModelSpec& m, bool products, std::uint64_t seed) {
  testing::Generator gen(seed);
  Subject s{id, {}};
  const auto f = framing_lotteries();
  auto second = [](const MarginalLottery& x) { return x.relabel(Source::kSecond, -kInf, kInf); };
  const auto ad = product(f.a, second(f.d));
  const auto bc = product(f.b, second(f.c));
  s.observations.push_back({ad, bc, choose(m, ad, bc)});
  if (!products) {
    // Same marginals, opposite couplings.
    const auto comonotone = JointLottery::make({{-5.0, -5.0, 0.5}, {5.0, 5.0, 0.5}});
    const auto hedged = JointLottery::make({{-5.0, 5.0, 0.5}, {5.0, -5.0, 0.5}});
    s.observations.push_back({comonotone, hedged, choose(m, comonotone, hedged)});
  }
  for (int i = 0; i < 60; ++i) {
    const auto a = products ? gen.product_lottery(-10, 10) : gen.joint(-10, 10);
    const auto b = products ? gen.product_lottery(-10, 10) : gen.joint(-10, 10);
    s.observations.push_back({a, b, choose(m, a, b)});
  }
  return s;
}

const FitResult& result_for(const SubjectFit& s, const std::string& family) {
  for (const auto& r : s.results) {
    if (r.family == family) return r;
  }
  throw std::runtime_error("family missing: " + family);
}

TEST(ChoiceTest, Parsing) {
  EXPECT_EQ(parse_choice("A"), Choice::kA);
  EXPECT_EQ(parse_choice("b"), Choice::kB);
  EXPECT_EQ(parse_choice("Indifferent"), Choice::kIndifferent);
  EXPECT_EQ(parse_choice("~"), Choice::kIndifferent);
  EXPECT_FALSE(parse_choice("maybe").has_value());
}

TEST(DatasetTest, ParsesCsvWithHeaderAndComments) {
  const auto data = load_dataset(kFixtures / "dataset.csv");
  ASSERT_EQ(data.subjects.size(), 2u);
  EXPECT_EQ(data.subjects[0].id, "narrow");
  EXPECT_EQ(data.subjects[0].observations.size(), 2u);
  EXPECT_EQ(data.subjects[1].observations[0].choice, Choice::kB);
  EXPECT_THROW(parse_dataset("s,a.json,b.json\n", kFixtures), Error);
  EXPECT_THROW(parse_dataset("s,lottery_ad.json,lottery_bc.json,C\n", kFixtures), Error);
  EXPECT_THROW(parse_dataset("s,missing.json,lottery_bc.json,A\n", kFixtures), Error);
}

TEST(FitTest, RecoversNarrowBracketer) {
  ChoiceDataset data{{synthetic("nb", testing::nb_loss_averse(2.0), true, 1)}};
  const FitReport r = fit_dataset(data, default_grids());
  ASSERT_EQ(r.subjects.size(), 1u);
  const SubjectFit& s = r.subjects[0];
  const FitResult& nb = result_for(s, "NB");
  EXPECT_EQ(nb.violations, 0u);
  EXPECT_EQ(s.results[s.best].family, "NB");
  EXPECT_GT(result_for(s, "EU").violations, 0u);
}

TEST(FitTest, RecoversExpectedUtility) {
  ChoiceDataset data{{synthetic("eu", testing::eu_money(), false, 2)}};
  const FitReport r = fit_dataset(data, default_grids());
  const SubjectFit& s = r.subjects[0];
  const FitResult& eu = result_for(s, "EU");
  EXPECT_EQ(eu.violations, 0u);
  EXPECT_EQ(s.results[s.best].family, "EU");
  EXPECT_GT(result_for(s, "NB").violations, 0u);
  const FitResult& mix = result_for(s, "LambdaMix");
  EXPECT_GT(mix.skipped, 0u);
  EXPECT_LE(mix.violations + mix.skipped, mix.observations);
}

TEST(FitTest, PredictionsMatchTheWinningModel) {
  ChoiceDataset data{{synthetic("nb", testing::nb_loss_averse(2.0), true, 3)}};
  const FitReport r = fit_dataset(data, default_grids({"NB"}));
  const FitResult& best = r.subjects[0].results[r.subjects[0].best];
  ASSERT_TRUE(best.model.has_value());
  ASSERT_EQ(best.predictions.size(), data.subjects[0].observations.size());
  for (std::size_t i = 0; i < best.predictions.size(); ++i) {
    EXPECT_EQ(best.predictions[i], predict(*best.model, data.subjects[0].observations[i]));
  }
}

TEST(FitTest, TiesGoToFewerParameters) {
  // A single sure-thing comparison is fit perfectly by every family.
  Subject s{"tie", {{JointLottery::degenerate(1, 1), JointLottery::degenerate(0, 0), Choice::kA}}};
  const FitReport r = fit_dataset({{s}}, default_grids({"LambdaMix", "NB", "EU"}));
  const auto& fit = r.subjects[0];
  EXPECT_EQ(fit.results[fit.best].family, "NB");
  EXPECT_EQ(fit.results[fit.best].parameter_count, 1);
}

TEST(FitTest, EmptyGridIsOmittedWithWarning) {
  auto grids = default_grids({"EU"});
  grids.push_back({"Empty", 1, {}});
  ChoiceDataset data{{synthetic("eu", testing::eu_money(), false, 4)}};
  const FitReport r = fit_dataset(data, grids);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("Empty"), std::string::npos);
  EXPECT_EQ(r.subjects[0].results.size(), 1u);
  EXPECT_THROW(default_grids({"Nope"}), Error);
}

TEST(FitTest, ReportIsDeterministic) {
  const auto data = load_dataset(kFixtures / "dataset.csv");
  EXPECT_EQ(fit_report_text(fit_dataset(data, default_grids())),
            fit_report_text(fit_dataset(data, default_grids())));
}

}  // namespace
}  // namespace bracketlab
