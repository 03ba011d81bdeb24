#ifndef BRACKETLAB_EXPERIMENTS_HPP
#define BRACKETLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bracketlab/lottery.hpp"
#include "bracketlab/temporal.hpp"

namespace bracketlab {

struct ExperimentCheck {
  std::string label;
  std::string value;
  std::string expected;
  bool passed = false;
};

struct ExperimentReport {
  std::string name;
  std::vector<ExperimentCheck> checks;

  bool passed() const;
};

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Runs one self-contained reproduction. Throws Error(kInvalidModel) for an
/// unknown name.
ExperimentReport run_experiment(std::string_view name, std::uint64_t seed = 0);

std::string experiment_report_text(const ExperimentReport& report);

/// The four single-account lotteries of the framing example: A = 2.40 for
/// sure, B = 10 w.p. 1/4, C = -7.50 for sure, D = -10 w.p. 3/4.
struct FramingLotteries {
  MarginalLottery a;
  MarginalLottery b;
  MarginalLottery c;
  MarginalLottery d;
};
FramingLotteries framing_lotteries();

/// Geometric growth tree used by the timing experiment: c0 = 1, growth
/// 1.05 or 0.97 with equal odds, four transitions.
TemporalTree timing_fixture_tree();

/// Random geometric growth tree with depth <= 4 and <= 3 growth states.
TemporalTree random_iid_tree(std::uint64_t seed, std::uint64_t index);

}  // namespace bracketlab

#endif  // BRACKETLAB_EXPERIMENTS_HPP
