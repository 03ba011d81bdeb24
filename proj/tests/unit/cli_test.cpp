#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace bracketlab::cli {
namespace {

const std::string kFixtures = BRACKETLAB_FIXTURES;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bracketlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

TEST(CliTest, CompareIdenticalFilesIsIndifferent) {
  const auto r = run_cli({"compare", fixture("model_nb.json"), fixture("lottery_ad.json"),
                          fixture("lottery_ad.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "Indifferent");
}

TEST(CliTest, CompareFramingPair) {
  const auto r = run_cli({"compare", fixture("model_nb.json"), fixture("lottery_ad.json"),
                          fixture("lottery_bc.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("StrictlyPrefers"), std::string::npos);
  EXPECT_NE(r.out.find("V(A) = -3.225"), std::string::npos) << r.out;
}

TEST(CliTest, MalformedLotteryExitsOne) {
  const auto r = run_cli({"eval", fixture("model_nb.json"), fixture("lottery_malformed.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("lottery_malformed.json"), std::string::npos) << r.err;
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"experiment", "allais"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"axioms", fixture("model_nb.json"), "--axiom", "Transitivity"}).code, 1);
}

TEST(CliTest, EvalAndCe) {
  auto r = run_cli({"eval", fixture("model_nb.json"), fixture("lottery_bc.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-6.875\n");
  r = run_cli({"ce", fixture("index_loss_sqrt.json"), fixture("marginal_b.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.625\n");
}

TEST(CliTest, ExperimentFraming) {
  const auto r = run_cli({"experiment", "tk1981"});
  EXPECT_EQ(r.code, 0);
  for (const char* line : {"CE(p_A) = 2.4", "CE(p_B) = 0.625", "CE(p_C) = -7.5",
                           "CE(p_D) = -5.625"}) {
    EXPECT_NE(r.out.find(line), std::string::npos) << line;
  }
}

TEST(CliTest, AxiomsAreDeterministic) {
  const std::vector<std::string> args = {"axioms", fixture("model_nb.json"), "--axiom",
                                         "MultilinearIndependence", "--trials", "300", "--seed",
                                         "4"};
  const auto a = run_cli(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto b = run_cli(threaded);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("Violated"), std::string::npos);
}

TEST(CliTest, SeedFromEnvironment) {
  const std::vector<std::string> args = {"axioms", fixture("model_nb.json"), "--axiom",
                                         "Independence", "--trials", "200"};
  ::setenv("BRACKETLAB_SEED", "17", 1);
  const auto env = run_cli(args);
  ::unsetenv("BRACKETLAB_SEED");
  auto flag = args;
  flag.insert(flag.end(), {"--seed", "17"});
  EXPECT_EQ(env.out, run_cli(flag).out);
  EXPECT_NE(env.out.find("seed 17"), std::string::npos);
}

TEST(CliTest, TreeCommands) {
  auto r = run_cli({"tree-value", fixture("tree_timing.json"), "--family", "KMBIB", "--rho", "0.5",
                    "--alpha", "-9", "--beta", "0.97"});
  EXPECT_EQ(r.code, 0) << r.err;
  r = run_cli({"timing-premium", fixture("tree_timing.json"), "--rho", "0.5", "--alpha", "0.5",
               "--beta", "0.97"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("EZ ", 0), 0u);
  EXPECT_NE(r.out.find("KMBIB "), std::string::npos);
  r = run_cli({"tree-value", fixture("tree_ragged.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("InvalidTree"), std::string::npos) << r.err;
}

TEST(CliTest, FitAndClassifyDataset) {
  auto r = run_cli({"fit", fixture("dataset.csv"), "--families", "EU,NB"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("narrow"), std::string::npos);
  r = run_cli({"classify-bracketing", fixture("model_nb.json"), "--pairs", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("NarrowBoth"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace bracketlab::cli
