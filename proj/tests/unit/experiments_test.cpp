#include "bracketlab/experiments.hpp"

#include <gtest/gtest.h>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

TEST(ExperimentsTest, AllScriptedReproductionsPass) {
  for (const auto& name : experiment_names()) {
    const ExperimentReport r = run_experiment(name);
    EXPECT_EQ(r.name, name);
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << name << ": " << c.label;
  }
}

TEST(ExperimentsTest, FramingText) {
  const std::string text = experiment_report_text(run_experiment("tk1981"));
  EXPECT_NE(text.find("[pass] CE(p_A) = 2.4"), std::string::npos) << text;
  EXPECT_NE(text.find("CE(p_D) = -5.625"), std::string::npos) << text;
  EXPECT_EQ(text.find("[fail]"), std::string::npos);
}

TEST(ExperimentsTest, SeedOnlyAffectsRandomizedParts) {
  EXPECT_TRUE(run_experiment("timing", 12345).passed());
  EXPECT_EQ(experiment_report_text(run_experiment("rabin", 1)),
            experiment_report_text(run_experiment("rabin", 2)));
}

TEST(ExperimentsTest, UnknownName) {
  EXPECT_THROW(run_experiment("allais"), Error);
}

TEST(ExperimentsTest, RandomTreesRespectTheirBounds) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const TemporalTree t = random_iid_tree(0, i);
    EXPECT_GE(t.depth(), 1);
    EXPECT_LE(t.depth(), 4);
    EXPECT_LE(t.root().children.size(), 3u);
  }
  EXPECT_EQ(random_iid_tree(3, 4), random_iid_tree(3, 4));
}

}  // namespace
}  // namespace bracketlab
