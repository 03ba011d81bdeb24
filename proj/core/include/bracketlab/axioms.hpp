#ifndef BRACKETLAB_AXIOMS_HPP
#define BRACKETLAB_AXIOMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bracketlab/lottery.hpp"
#include "bracketlab/representations.hpp"
#include "bracketlab/utility_index.hpp"

namespace bracketlab {

enum class AxiomId {
  kMonotonicity,
  kIndependence,
  kBiIndependence,
  kCorrelationNeglect,
  kMultilinearIndependence,
  kConditionalIndependence,
  kWeakMultilinearIndependence,
  kCorrelationConsistency,
  kForwardCorrelationConsistency,
  kBroadBracketingNoRisk,
  kSymmetry,
  kHistoryIndependence,
  kStationarity,
  kRecursivity,
  kCorrelationAversion,
  kLongRunRiskAversion,
  kOrdinalDominance,
  kDiscountedUtilityNoRisk,
};

std::string_view to_string(AxiomId axiom);
std::optional<AxiomId> parse_axiom(std::string_view name);
const std::vector<AxiomId>& all_axioms();

/// A total comparator over joint lotteries. `utility`, when present, must
/// represent `compare`; samplers then calibrate indifference on it directly.
struct PreferenceOracle {
  std::function<Preference(const JointLottery&, const JointLottery&)> compare;
  std::function<double(const JointLottery&)> utility;
};

PreferenceOracle make_oracle(ModelSpec model, double band = kDefaultBand);

/// Caller-supplied tuple tested before random sampling. The lottery order
/// follows each axiom's statement, e.g. (P, Q, R, S) for the independence
/// family with `weights` the mixture weights to try.
struct AxiomInstance {
  AxiomId axiom = AxiomId::kIndependence;
  std::vector<JointLottery> lotteries;
  std::vector<double> weights;
  std::string note;
};

struct DiscountedCandidate {
  UtilityIndex u;
  double beta = 1.0;
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  double grid_lo = -10.0;
  double grid_hi = 10.0;
  double grid_step = 0.5;
  OutcomeSpace space = OutcomeSpace::plane();
  /// Largest marginal support size drawn, 1..4.
  int max_support = 3;
  std::size_t trials = 10000;
  std::vector<double> weights = {0.25, 0.5, 0.75};
  /// Strict premises must clear this relative utility gap so that the
  /// conclusion is not decided by the indifference band.
  double premise_margin = 1e-6;
  std::size_t max_counterexamples = 5;
  std::vector<AxiomInstance> injected;
  std::optional<DiscountedCandidate> discounted;
  /// Trials are split into contiguous chunks; reports do not depend on it.
  int threads = 1;

  /// [-10, 10] step 0.5 on the plane.
  static SamplerConfig money();
  /// [0.1, 10] step 0.5 on [0, inf)^2.
  static SamplerConfig consumption();

  std::vector<double> grid() const;
  /// Throws Error(kInvalidModel) on an empty grid or bad sizes.
  void validate() const;
};

/// One oracle query recorded in a counterexample: lotteries[a] vs lotteries[b].
struct Comparison {
  std::size_t a = 0;
  std::size_t b = 0;
  Verdict verdict = Verdict::kIndifferent;
  double value_a = 0.0;
  double value_b = 0.0;
};

struct Counterexample {
  std::size_t trial = 0;
  std::vector<JointLottery> lotteries;
  std::vector<std::string> labels;
  double alpha = 0.0;
  std::vector<Comparison> comparisons;
  std::string description;
};

enum class AxiomVerdict { kNoViolationFound, kViolated };

std::string_view to_string(AxiomVerdict verdict);

struct AxiomReport {
  AxiomId axiom = AxiomId::kIndependence;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Tuples the sampler managed to build (calibrations succeeded).
  std::size_t built = 0;
  /// Tuples whose premise held under the oracle.
  std::size_t satisfying = 0;
  std::size_t violation_count = 0;
  /// Trials dropped because the oracle threw (e.g. domain errors).
  std::size_t skipped = 0;
  std::vector<Counterexample> violations;
  AxiomVerdict verdict = AxiomVerdict::kNoViolationFound;
};

/// Samples premise-satisfying tuples and tests the conclusion. Trial t uses
/// an RNG stream derived from (cfg.seed, t). Throws
/// Error(kPreconditionSamplerExhausted) if no tuple could be built.
AxiomReport check_axiom(AxiomId axiom, const PreferenceOracle& oracle, const SamplerConfig& cfg);

/// Re-runs every recorded comparison; true iff all verdicts reproduce.
bool reverify(const Counterexample& counterexample, const PreferenceOracle& oracle);

/// Deterministic per-trial generator.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Finds t in [t_lo, t_hi] with make(t) ~ target by bisection, assuming the
/// oracle's value of make(t) is increasing in t. Returns nullopt if the
/// endpoints do not bracket the target or the result is not band-indifferent.
std::optional<JointLottery> calibrate(const PreferenceOracle& oracle, const JointLottery& target,
                                      const std::function<JointLottery(double)>& make,
                                      double t_lo, double t_hi);

}  // namespace bracketlab

#endif  // BRACKETLAB_AXIOMS_HPP
