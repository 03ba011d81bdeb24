#ifndef BRACKETLAB_REPRESENTATIONS_HPP
#define BRACKETLAB_REPRESENTATIONS_HPP

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bracketlab/bivariate_index.hpp"
#include "bracketlab/lottery.hpp"
#include "bracketlab/utility_index.hpp"

namespace bracketlab {

/// Finite union of pairwise disjoint open intervals not containing 0.
class OpenSet1D {
 public:
  OpenSet1D() = default;
  /// Sorts the intervals. Throws Error(kInvalidModel) on empty, overlapping
  /// or zero-containing intervals.
  static OpenSet1D make(std::vector<Interval> intervals);

  bool empty() const { return intervals_.empty(); }
  /// Strict membership.
  bool contains(double x) const;
  /// Finite endpoints, sorted, without duplicates.
  std::vector<double> finite_boundary() const;
  const std::vector<Interval>& intervals() const { return intervals_; }

  friend bool operator==(const OpenSet1D&, const OpenSet1D&) = default;

 private:
  std::vector<Interval> intervals_;
};

namespace model {

struct Eu {
  BivariateIndex w;
};
struct EuCn {
  BivariateIndex w;
};
struct Nb {
  BivariateIndex w;
  UtilityIndex v1;
  UtilityIndex v2;
};
struct Bib {
  BivariateIndex w;
  UtilityIndex v2;
};
struct Fib {
  BivariateIndex w;
  UtilityIndex v1;
};
struct BibCn {
  BivariateIndex w;
  UtilityIndex v2;
};
struct FibCn {
  BivariateIndex w;
  UtilityIndex v1;
};
struct GbibCn {
  BivariateIndex w;
  UtilityIndex v1;
  UtilityIndex v2;
  OpenSet1D h2;
};
struct GfibCn {
  BivariateIndex w;
  UtilityIndex v1;
  UtilityIndex v2;
  OpenSet1D h1;
};
/// E u(x) + beta E u(y) on consumption lotteries.
struct Edu {
  UtilityIndex u;
  double beta = 1.0;
};
/// E phi((u(x) + beta u(y)) / (1 + beta)).
struct Km {
  UtilityIndex u;
  double beta = 1.0;
  UtilityIndex phi;
};
/// sum_x phi(u(x) + beta u(CE_{phi o u}(P_{2|x}))) P1(x).
struct KmBib {
  UtilityIndex phi;
  UtilityIndex u;
  double beta = 1.0;
};
/// Two-period CRRA-CES KM-BIB in consumption units:
/// U(c1) = [(1-beta) c1^rho + beta M(c1)^rho]^(1/rho) with
/// M(c1) = (E_{2|c1} c2^alpha)^(1/alpha), and V = (E_1 U^alpha)^(1/alpha).
struct CrraCesKmBib {
  double rho = 0.5;
  double alpha = 0.5;
  double beta = 0.5;
};
/// lambda E u(x+y) + (1-lambda)(E u(x) + E u(y)); product lotteries only.
struct LambdaMix {
  UtilityIndex u;
  double lambda = 1.0;
};

}  // namespace model

using ModelSpec =
    std::variant<model::Eu, model::EuCn, model::Nb, model::Bib, model::Fib, model::BibCn,
                 model::FibCn, model::GbibCn, model::GfibCn, model::Edu, model::Km, model::KmBib,
                 model::CrraCesKmBib, model::LambdaMix>;

std::string_view family_name(const ModelSpec& model);

/// Throws Error(kInvalidModel) or Error(kDegenerateParameters) when scalar
/// parameters are out of range.
void check_parameters(const ModelSpec& model);

/// V(P) for the model's family. Throws Error(kDomainViolation) for atoms
/// outside the model domain and Error(kNonProductLottery) for LambdaMix on a
/// correlated lottery.
double evaluate(const ModelSpec& model, const JointLottery& lottery);

inline constexpr double kDefaultBand = 1e-9;

enum class Verdict { kStrictlyPrefers, kIndifferent, kStrictlyDispreferred };

std::string_view to_string(Verdict verdict);

struct Preference {
  Verdict verdict = Verdict::kIndifferent;
  double value_a = 0.0;
  double value_b = 0.0;
  double band = kDefaultBand;
};

/// Indifferent iff |a - b| <= band * max(1, |a|, |b|).
Preference compare_values(double a, double b, double band = kDefaultBand);

Preference compare(const ModelSpec& model, const JointLottery& a, const JointLottery& b,
                   double band = kDefaultBand);

struct ValidationGrid {
  double lo1 = -10.0;
  double hi1 = 10.0;
  double lo2 = -10.0;
  double hi2 = 10.0;
  int points = 41;
};

struct BoundaryFit {
  double boundary = 0.0;
  double scale = 0.0;
  double shift = 0.0;
  double deviation = 0.0;
  bool passed = false;
};

struct ValidationReport {
  bool passed = true;
  double worst_deviation = 0.0;
  std::vector<std::string> failures;
  std::vector<BoundaryFit> boundaries;
};

inline constexpr double kBoundaryTolerance = 1e-8;

/// Parameter ranges, index monotonicity on the grid, and for GBIB-CN /
/// GFIB-CN the affine boundary condition at every finite boundary point.
ValidationReport validate_model(const ModelSpec& model, const ValidationGrid& grid = {});

}  // namespace bracketlab

#endif  // BRACKETLAB_REPRESENTATIONS_HPP
