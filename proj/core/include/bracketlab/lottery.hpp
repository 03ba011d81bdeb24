#ifndef BRACKETLAB_LOTTERY_HPP
#define BRACKETLAB_LOTTERY_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace bracketlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Probability mass may be off by this much before construction rejects it.
inline constexpr double kMassTolerance = 1e-9;

enum class Source { kFirst = 1, kSecond = 2 };

constexpr Source other(Source s) {
  return s == Source::kFirst ? Source::kSecond : Source::kFirst;
}

/// Rounds an outcome to 12 significant decimal digits. Two outcomes are the
/// same support point iff their canonical forms are bit-identical.
double canonical_outcome(double x);

/// X1 x X2 as a product of closed intervals. Each interval must be
/// nontrivial and contain 0; infinite bounds are allowed.
struct OutcomeSpace {
  double lo1 = -kInf;
  double hi1 = kInf;
  double lo2 = -kInf;
  double hi2 = kInf;

  static OutcomeSpace plane() { return {}; }
  static OutcomeSpace box(double lo1, double hi1, double lo2, double hi2);

  /// Throws Error(kOutcomeOutOfBounds) when an interval is empty or misses 0.
  void validate() const;

  double lo(Source s) const { return s == Source::kFirst ? lo1 : lo2; }
  double hi(Source s) const { return s == Source::kFirst ? hi1 : hi2; }
  bool contains(Source s, double x) const { return x >= lo(s) && x <= hi(s); }

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;
};

struct MarginalAtom {
  double x = 0.0;
  double p = 0.0;
  friend bool operator==(const MarginalAtom&, const MarginalAtom&) = default;
};

struct JointAtom {
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;
  friend bool operator==(const JointAtom&, const JointAtom&) = default;
};

/// Finite-support lottery over one source. Atoms are canonical, merged,
/// strictly positive, sorted by outcome and sum to one.
class MarginalLottery {
 public:
  static MarginalLottery make(std::vector<MarginalAtom> atoms, Source source = Source::kFirst,
                              double lo = -kInf, double hi = kInf);
  static MarginalLottery degenerate(double x, Source source = Source::kFirst, double lo = -kInf,
                                    double hi = kInf);

  std::span<const MarginalAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  Source source() const { return source_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool is_degenerate() const { return atoms_.size() == 1; }
  double min_outcome() const { return atoms_.front().x; }
  double max_outcome() const { return atoms_.back().x; }
  double probability_of(double x) const;
  bool in_support(double x) const { return probability_of(x) > 0.0; }
  double mean() const;
  /// P(X <= x).
  double cdf(double x) const;

  /// Same atoms re-labelled as a lottery over another source / interval.
  MarginalLottery relabel(Source source, double lo, double hi) const;

  friend bool operator==(const MarginalLottery&, const MarginalLottery&) = default;

 private:
  MarginalLottery() = default;

  std::vector<MarginalAtom> atoms_;
  Source source_ = Source::kFirst;
  double lo_ = -kInf;
  double hi_ = kInf;
};

/// Finite-support probability measure on X1 x X2.
class JointLottery {
 public:
  static JointLottery make(std::vector<JointAtom> atoms,
                           const OutcomeSpace& space = OutcomeSpace::plane());
  static JointLottery degenerate(double x, double y,
                                 const OutcomeSpace& space = OutcomeSpace::plane());

  std::span<const JointAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const OutcomeSpace& space() const { return space_; }
  bool is_degenerate() const { return atoms_.size() == 1; }
  double probability_of(double x, double y) const;

  friend bool operator==(const JointLottery&, const JointLottery&) = default;

 private:
  JointLottery() = default;

  std::vector<JointAtom> atoms_;
  OutcomeSpace space_;
};

MarginalLottery marginal(const JointLottery& lottery, Source source);

/// Distribution of the other source given that `given` takes value x.
/// Throws Error(kOutcomeNotInSupport) if x has zero marginal mass.
MarginalLottery conditional(const JointLottery& lottery, Source given, double x);

/// alpha * P + (1 - alpha) * Q. Throws Error(kSpaceMismatch) on differing spaces.
JointLottery mix(double alpha, const JointLottery& p, const JointLottery& q);
MarginalLottery mix(double alpha, const MarginalLottery& p, const MarginalLottery& q);

/// Independent coupling of a source-1 and a source-2 marginal.
JointLottery product(const MarginalLottery& p, const MarginalLottery& q);
/// The product lottery with the same marginals as `lottery`.
JointLottery product_of_marginals(const JointLottery& lottery);
bool is_product(const JointLottery& lottery);

/// The sure-gain convolution P * (a1, a2): every atom moves by (a1, a2),
/// clamped at the upper bounds of the space.
JointLottery shift_clamped(const JointLottery& lottery, double a1, double a2);
MarginalLottery shift_clamped(const MarginalLottery& lottery, double a);

enum class Dominance { kDominatesPoint, kDominatedByPoint, kNeither };

Dominance dominance(const JointLottery& lottery, double x1, double x2);

/// p's CDF lies weakly below q's everywhere.
bool fosd_weak(const MarginalLottery& p, const MarginalLottery& q);
bool fosd_strict(const MarginalLottery& p, const MarginalLottery& q);

/// Distribution of x + y.
MarginalLottery money_aggregate(const JointLottery& lottery);

/// Same support and probabilities within `tol` absolute.
bool approx_equal(const JointLottery& a, const JointLottery& b, double tol = 1e-12);
bool approx_equal(const MarginalLottery& a, const MarginalLottery& b, double tol = 1e-12);

}  // namespace bracketlab

#endif  // BRACKETLAB_LOTTERY_HPP
