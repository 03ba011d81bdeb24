#include <benchmark/benchmark.h>

#include "bracketlab/axioms.hpp"
#include "bracketlab/experiments.hpp"
#include "bracketlab/representations.hpp"
#include "bracketlab/temporal.hpp"
#include "generators.hpp"
#include "models.hpp"

namespace bl = bracketlab;

namespace {

std::vector<bl::JointLottery> lotteries(int atoms, int count) {
  bl::testing::Generator gen(1);
  std::vector<bl::JointLottery> out;
  for (int i = 0; i < count; ++i) out.push_back(gen.joint(0.0, 10.0, atoms, 0.01));
  return out;
}

void BM_CertaintyEquivalent(benchmark::State& state) {
  bl::testing::Generator gen(2);
  std::vector<bl::MarginalAtom> atoms;
  for (int i = 0; i < state.range(0); ++i) atoms.push_back({gen.uniform(-10, 10), 1.0});
  for (auto& a : atoms) a.p /= static_cast<double>(atoms.size());
  const auto p = bl::MarginalLottery::make(atoms, bl::Source::kFirst);
  const auto v = bl::UtilityIndex::loss_averse_sqrt(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(bl::ce(v, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CertaintyEquivalent)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_Evaluate(benchmark::State& state, bl::ModelSpec model) {
  const auto ls = lotteries(static_cast<int>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bl::evaluate(model, ls[i++ % ls.size()]));
}
BENCHMARK_CAPTURE(BM_Evaluate, EU, bl::testing::eu_money())->Arg(4)->Arg(64);
BENCHMARK_CAPTURE(BM_Evaluate, NB, bl::testing::nb_sqrt())->Arg(4)->Arg(64);
BENCHMARK_CAPTURE(BM_Evaluate, BIB, bl::testing::bib_fixture())->Arg(4)->Arg(64);
BENCHMARK_CAPTURE(BM_Evaluate, KMBIB, bl::testing::km_bib(bl::UtilityIndex::exponential(0.5)))
    ->Arg(4)
    ->Arg(64);

void BM_TreeValue(benchmark::State& state, bl::TemporalFamily family) {
  const auto tree = bl::build_iid_tree(1.0, {{1.05, 0.4}, {1.0, 0.3}, {0.97, 0.3}},
                                       static_cast<int>(state.range(0)));
  const bl::CrraParams k{0.5, -9.0, 0.97};
  for (auto _ : state) benchmark::DoNotOptimize(bl::value_tree(family, tree, k));
}
BENCHMARK_CAPTURE(BM_TreeValue, EZ, bl::TemporalFamily::kEz)->DenseRange(2, 8, 3);
BENCHMARK_CAPTURE(BM_TreeValue, KMBIB, bl::TemporalFamily::kKmBib)->DenseRange(2, 8, 3);

void BM_AxiomCheck(benchmark::State& state) {
  const auto oracle = bl::make_oracle(bl::testing::nb_loss_averse());
  bl::SamplerConfig cfg = bl::SamplerConfig::money();
  cfg.trials = 1000;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bl::check_axiom(bl::AxiomId::kIndependence, oracle, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_AxiomCheck)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
