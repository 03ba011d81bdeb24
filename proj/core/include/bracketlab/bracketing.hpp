#ifndef BRACKETLAB_BRACKETING_HPP
#define BRACKETLAB_BRACKETING_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bracketlab/axioms.hpp"

namespace bracketlab {

enum class BracketingLabel { kBroadEverywhere, kNarrowSource1, kNarrowSource2, kNarrowBoth, kMixed };

std::string_view to_string(BracketingLabel label);

/// One tested grid point of a source with its half-step cell.
struct BracketingCell {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// Pairs (p, p') narrowly indifferent in the other source that were built.
  std::size_t tested = 0;
  /// True iff some pair was strictly ranked at this point.
  bool witness = false;
};

struct BracketingReport {
  /// Cells indexed by points of source 1 (testing source-2 lotteries).
  std::vector<BracketingCell> cells1;
  /// Cells indexed by points of source 2 (testing source-1 lotteries).
  std::vector<BracketingCell> cells2;
  /// Merged witness cells. Cells without a witness are "no witness found",
  /// not proven narrow.
  std::vector<Interval> sigma1;
  std::vector<Interval> sigma2;
  double reference1 = 0.0;
  double reference2 = 0.0;
  BracketingLabel label = BracketingLabel::kNarrowBoth;
  /// Label with the region estimates for kMixed, e.g. "Mixed(H2~(2.25,4.75))".
  std::string summary;
};

struct BracketingConfig {
  SamplerConfig sampler = SamplerConfig::money();
  /// Random lotteries tried per grid point.
  int pairs_per_point = 8;
};

/// For each grid point y of source 2, draws source-1 lotteries p, pins
/// p' = delta_c with (p, delta_r) ~ (p', delta_r) at the reference point r,
/// and flags y when (p, delta_y) and (p', delta_y) are strictly ranked beyond
/// the sampler's premise margin. Symmetrically for source 1. The reference
/// is the grid point closest to 0. Throws Error(kPreconditionSamplerExhausted)
/// when no pair can be calibrated.
BracketingReport classify_bracketing(const PreferenceOracle& oracle, const BracketingConfig& cfg);

}  // namespace bracketlab

#endif  // BRACKETLAB_BRACKETING_HPP
