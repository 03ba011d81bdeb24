#ifndef BRACKETLAB_UTILITY_INDEX_HPP
#define BRACKETLAB_UTILITY_INDEX_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bracketlab/lottery.hpp"

namespace bracketlab {

struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Knot {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Knot&, const Knot&) = default;
};

class UtilityIndex;

namespace index_family {

/// x^gamma on [0, inf), gamma > 0.
struct Power {
  double gamma = 1.0;
};
/// -exp(-a x) / a on R, a != 0 (a > 0 concave, a < 0 convex).
struct Exponential {
  double a = 1.0;
};
/// a x + b, a > 0.
struct Linear {
  double a = 1.0;
  double b = 0.0;
};
/// sqrt(x) for gains, -lambda sqrt(-x) for losses; reference point 0.
struct LossAverseSqrt {
  double lambda = 1.0;
};
/// Piecewise-linear through strictly increasing knots.
struct Tabulated {
  std::vector<Knot> knots;
};
/// scale * base(x) + shift.
struct Affine {
  std::shared_ptr<const UtilityIndex> base;
  double scale = 1.0;
  double shift = 0.0;
};
/// outer(inner(x)).
struct Composed {
  std::shared_ptr<const UtilityIndex> outer;
  std::shared_ptr<const UtilityIndex> inner;
};
/// Caller-supplied increasing function on a finite interval; inverted by bisection.
struct Callable {
  std::function<double(double)> f;
  Interval domain;
  std::string name;
};

}  // namespace index_family

/// A continuous, strictly increasing scalar index with an inverse. Immutable;
/// copies share state.
class UtilityIndex {
 public:
  using Spec = std::variant<index_family::Power, index_family::Exponential, index_family::Linear,
                            index_family::LossAverseSqrt, index_family::Tabulated,
                            index_family::Affine, index_family::Composed, index_family::Callable>;

  static UtilityIndex power(double gamma);
  static UtilityIndex exponential(double a);
  static UtilityIndex linear(double a = 1.0, double b = 0.0);
  static UtilityIndex loss_averse_sqrt(double lambda);
  static UtilityIndex tabulated(std::vector<Knot> knots);
  static UtilityIndex callable(std::function<double(double)> f, double lo, double hi,
                               std::string name = "callable");
  /// outer after inner; the inverse runs inner^-1(outer^-1(v)).
  static UtilityIndex compose(const UtilityIndex& outer, const UtilityIndex& inner);

  double forward(double x) const;
  double inverse(double v) const;
  double operator()(double x) const { return forward(x); }

  Interval domain() const;
  Interval range() const;

  const Spec& spec() const { return *spec_; }
  std::string describe() const;

  friend UtilityIndex affine(const UtilityIndex& f, double a, double b);

 private:
  explicit UtilityIndex(Spec spec);

  std::shared_ptr<const Spec> spec_;
};

enum class Direction { kForward, kInverse };

/// Throws Error(kDomainViolation) / Error(kRangeViolation) outside the index's
/// domain / range.
double apply_index(const UtilityIndex& f, double v, Direction direction);

/// Certainty equivalent f^-1(E_p f). Lies in [min supp p, max supp p].
double ce(const UtilityIndex& f, const MarginalLottery& p);

/// Weighted form used on conditional slices; weights must sum to one.
double ce(const UtilityIndex& f, std::span<const MarginalAtom> atoms);

/// g = a f + b. Throws Error(kNonpositiveScale) unless a > 0.
UtilityIndex affine(const UtilityIndex& f, double a, double b);

/// Samples `points` equally spaced points of [lo, hi] intersected with the
/// domain and checks strict increase. Used by model validation.
bool strictly_increasing_on_grid(const UtilityIndex& f, double lo, double hi, int points);

}  // namespace bracketlab

#endif  // BRACKETLAB_UTILITY_INDEX_HPP
