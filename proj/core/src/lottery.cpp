#include "bracketlab/lottery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_probability(double p) {
  if (!std::isfinite(p) || p < 0.0) {
    throw Error(ErrorKind::kInvalidProbability, "probability " + describe(p) + " is not in [0, 1]");
  }
}

double check_outcome(double x, double lo, double hi, const char* label) {
  if (!std::isfinite(x) || x < lo || x > hi) {
    throw Error(ErrorKind::kOutcomeOutOfBounds, std::string(label) + " outcome " + describe(x) +
                                                    " outside [" + describe(lo) + ", " +
                                                    describe(hi) + "]");
  }
  return std::clamp(canonical_outcome(x), lo, hi);
}

double normalizer(double total) {
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::kProbabilitySumOutOfTolerance,
                "probabilities sum to " + describe(total));
  }
  return total;
}

}  // namespace

double canonical_outcome(double x) {
  if (x == 0.0) return 0.0;  // folds -0.0
  if (!std::isfinite(x)) return x;
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 11);
  double out = x;
  std::from_chars(buf, res.ptr, out);
  return out;
}

OutcomeSpace OutcomeSpace::box(double lo1, double hi1, double lo2, double hi2) {
  OutcomeSpace s{lo1, hi1, lo2, hi2};
  s.validate();
  return s;
}

void OutcomeSpace::validate() const {
  for (Source s : {Source::kFirst, Source::kSecond}) {
    if (std::isnan(lo(s)) || std::isnan(hi(s)) || !(lo(s) < hi(s)) || lo(s) > 0.0 ||
        hi(s) < 0.0) {
      throw Error(ErrorKind::kOutcomeOutOfBounds,
                  "source " + std::to_string(static_cast<int>(s)) + " interval [" +
                      describe(lo(s)) + ", " + describe(hi(s)) +
                      "] must be nontrivial and contain 0");
    }
  }
}

// ---------------------------------------------------------------------------
// MarginalLottery

MarginalLottery MarginalLottery::make(std::vector<MarginalAtom> atoms, Source source, double lo,
                                      double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorKind::kOutcomeOutOfBounds, "empty outcome interval");
  }
  double total = 0.0;
  for (auto& a : atoms) {
    check_probability(a.p);
    a.x = check_outcome(a.x, lo, hi, "marginal");
    total += a.p;
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const MarginalAtom& a, const MarginalAtom& b) { return a.x < b.x; });

  MarginalLottery out;
  out.source_ = source;
  out.lo_ = lo;
  out.hi_ = hi;
  for (const auto& a : atoms) {
    if (a.p == 0.0) continue;
    if (!out.atoms_.empty() && out.atoms_.back().x == a.x) {
      out.atoms_.back().p += a.p;
    } else {
      out.atoms_.push_back(a);
    }
  }
  if (out.atoms_.empty()) {
    throw Error(ErrorKind::kEmptySupport, "lottery has no atom with positive probability");
  }
  const double norm = normalizer(total);
  if (norm != 1.0) {
    for (auto& a : out.atoms_) a.p /= norm;
  }
  return out;
}

MarginalLottery MarginalLottery::degenerate(double x, Source source, double lo, double hi) {
  return make({{x, 1.0}}, source, lo, hi);
}

double MarginalLottery::probability_of(double x) const {
  const double key = canonical_outcome(x);
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), key,
                             [](const MarginalAtom& a, double v) { return a.x < v; });
  return (it != atoms_.end() && it->x == key) ? it->p : 0.0;
}

double MarginalLottery::mean() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.x * a.p;
  return m;
}

double MarginalLottery::cdf(double x) const {
  double c = 0.0;
  for (const auto& a : atoms_) {
    if (a.x > x) break;
    c += a.p;
  }
  return c;
}

MarginalLottery MarginalLottery::relabel(Source source, double lo, double hi) const {
  return make(atoms_, source, lo, hi);
}

// ---------------------------------------------------------------------------
// JointLottery

JointLottery JointLottery::make(std::vector<JointAtom> atoms, const OutcomeSpace& space) {
  space.validate();
  double total = 0.0;
  for (auto& a : atoms) {
    check_probability(a.p);
    a.x = check_outcome(a.x, space.lo1, space.hi1, "source-1");
    a.y = check_outcome(a.y, space.lo2, space.hi2, "source-2");
    total += a.p;
  }
  std::sort(atoms.begin(), atoms.end(), [](const JointAtom& a, const JointAtom& b) {
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });

  JointLottery out;
  out.space_ = space;
  for (const auto& a : atoms) {
    if (a.p == 0.0) continue;
    if (!out.atoms_.empty() && out.atoms_.back().x == a.x && out.atoms_.back().y == a.y) {
      out.atoms_.back().p += a.p;
    } else {
      out.atoms_.push_back(a);
    }
  }
  if (out.atoms_.empty()) {
    throw Error(ErrorKind::kEmptySupport, "lottery has no atom with positive probability");
  }
  const double norm = normalizer(total);
  if (norm != 1.0) {
    for (auto& a : out.atoms_) a.p /= norm;
  }
  return out;
}

JointLottery JointLottery::degenerate(double x, double y, const OutcomeSpace& space) {
  return make({{x, y, 1.0}}, space);
}

double JointLottery::probability_of(double x, double y) const {
  const double kx = canonical_outcome(x);
  const double ky = canonical_outcome(y);
  for (const auto& a : atoms_) {
    if (a.x == kx && a.y == ky) return a.p;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Operations

MarginalLottery marginal(const JointLottery& lottery, Source source) {
  std::vector<MarginalAtom> atoms;
  atoms.reserve(lottery.size());
  for (const auto& a : lottery.atoms()) {
    atoms.push_back({source == Source::kFirst ? a.x : a.y, a.p});
  }
  const auto& s = lottery.space();
  return MarginalLottery::make(std::move(atoms), source, s.lo(source), s.hi(source));
}

MarginalLottery conditional(const JointLottery& lottery, Source given, double x) {
  const double key = canonical_outcome(x);
  std::vector<MarginalAtom> atoms;
  double mass = 0.0;
  for (const auto& a : lottery.atoms()) {
    const double g = given == Source::kFirst ? a.x : a.y;
    if (g != key) continue;
    atoms.push_back({given == Source::kFirst ? a.y : a.x, a.p});
    mass += a.p;
  }
  if (atoms.empty()) {
    throw Error(ErrorKind::kOutcomeNotInSupport,
                "outcome " + describe(x) + " is not in the support of source " +
                    std::to_string(static_cast<int>(given)));
  }
  for (auto& a : atoms) a.p /= mass;
  const Source target = other(given);
  const auto& s = lottery.space();
  return MarginalLottery::make(std::move(atoms), target, s.lo(target), s.hi(target));
}

JointLottery mix(double alpha, const JointLottery& p, const JointLottery& q) {
  if (!(p.space() == q.space())) {
    throw Error(ErrorKind::kSpaceMismatch, "cannot mix lotteries on different outcome spaces");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::kInvalidProbability, "mixture weight " + describe(alpha));
  }
  if (alpha == 1.0) return p;
  if (alpha == 0.0) return q;
  std::vector<JointAtom> atoms;
  atoms.reserve(p.size() + q.size());
  for (const auto& a : p.atoms()) atoms.push_back({a.x, a.y, alpha * a.p});
  for (const auto& a : q.atoms()) atoms.push_back({a.x, a.y, (1.0 - alpha) * a.p});
  return JointLottery::make(std::move(atoms), p.space());
}

MarginalLottery mix(double alpha, const MarginalLottery& p, const MarginalLottery& q) {
  if (p.source() != q.source() || p.lo() != q.lo() || p.hi() != q.hi()) {
    throw Error(ErrorKind::kSourceMismatch, "cannot mix marginals of different sources");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::kInvalidProbability, "mixture weight " + describe(alpha));
  }
  if (alpha == 1.0) return p;
  if (alpha == 0.0) return q;
  std::vector<MarginalAtom> atoms;
  atoms.reserve(p.size() + q.size());
  for (const auto& a : p.atoms()) atoms.push_back({a.x, alpha * a.p});
  for (const auto& a : q.atoms()) atoms.push_back({a.x, (1.0 - alpha) * a.p});
  return MarginalLottery::make(std::move(atoms), p.source(), p.lo(), p.hi());
}

JointLottery product(const MarginalLottery& p, const MarginalLottery& q) {
  if (p.source() != Source::kFirst || q.source() != Source::kSecond) {
    throw Error(ErrorKind::kSourceMismatch,
                "product expects a source-1 marginal and a source-2 marginal");
  }
  std::vector<JointAtom> atoms;
  atoms.reserve(p.size() * q.size());
  for (const auto& a : p.atoms()) {
    for (const auto& b : q.atoms()) atoms.push_back({a.x, b.x, a.p * b.p});
  }
  return JointLottery::make(std::move(atoms), OutcomeSpace{p.lo(), p.hi(), q.lo(), q.hi()});
}

JointLottery product_of_marginals(const JointLottery& lottery) {
  return product(marginal(lottery, Source::kFirst), marginal(lottery, Source::kSecond));
}

bool is_product(const JointLottery& lottery) {
  const auto p1 = marginal(lottery, Source::kFirst);
  const auto p2 = marginal(lottery, Source::kSecond);
  if (lottery.size() != p1.size() * p2.size()) return false;
  for (const auto& a : lottery.atoms()) {
    const double expected = p1.probability_of(a.x) * p2.probability_of(a.y);
    if (std::fabs(a.p - expected) > 1e-12 * std::max(a.p, expected)) return false;
  }
  return true;
}

JointLottery shift_clamped(const JointLottery& lottery, double a1, double a2) {
  if (!(a1 >= 0.0 && a2 >= 0.0)) {
    throw Error(ErrorKind::kDomainViolation, "sure gains must be nonnegative");
  }
  const auto& s = lottery.space();
  std::vector<JointAtom> atoms;
  atoms.reserve(lottery.size());
  for (const auto& a : lottery.atoms()) {
    atoms.push_back({std::min(a.x + a1, s.hi1), std::min(a.y + a2, s.hi2), a.p});
  }
  return JointLottery::make(std::move(atoms), s);
}

MarginalLottery shift_clamped(const MarginalLottery& lottery, double a) {
  if (!(a >= 0.0)) {
    throw Error(ErrorKind::kDomainViolation, "sure gain must be nonnegative");
  }
  std::vector<MarginalAtom> atoms;
  atoms.reserve(lottery.size());
  for (const auto& at : lottery.atoms()) atoms.push_back({std::min(at.x + a, lottery.hi()), at.p});
  return MarginalLottery::make(std::move(atoms), lottery.source(), lottery.lo(), lottery.hi());
}

Dominance dominance(const JointLottery& lottery, double x1, double x2) {
  const double k1 = canonical_outcome(x1);
  const double k2 = canonical_outcome(x2);
  if (lottery.is_degenerate() && lottery.atoms()[0].x == k1 && lottery.atoms()[0].y == k2) {
    return Dominance::kNeither;
  }
  bool above = true;
  bool below = true;
  for (const auto& a : lottery.atoms()) {
    above = above && a.x >= k1 && a.y >= k2;
    below = below && a.x <= k1 && a.y <= k2;
  }
  if (above) return Dominance::kDominatesPoint;
  if (below) return Dominance::kDominatedByPoint;
  return Dominance::kNeither;
}

bool fosd_weak(const MarginalLottery& p, const MarginalLottery& q) {
  // Both CDFs are step functions, so checking the union of supports suffices.
  constexpr double kSlack = 1e-12;
  for (const auto& a : p.atoms()) {
    if (p.cdf(a.x) > q.cdf(a.x) + kSlack) return false;
  }
  for (const auto& a : q.atoms()) {
    if (p.cdf(a.x) > q.cdf(a.x) + kSlack) return false;
  }
  return true;
}

bool fosd_strict(const MarginalLottery& p, const MarginalLottery& q) {
  return fosd_weak(p, q) && !approx_equal(p, q);
}

MarginalLottery money_aggregate(const JointLottery& lottery) {
  std::vector<MarginalAtom> atoms;
  atoms.reserve(lottery.size());
  for (const auto& a : lottery.atoms()) atoms.push_back({a.x + a.y, a.p});
  const auto& s = lottery.space();
  return MarginalLottery::make(std::move(atoms), Source::kFirst, s.lo1 + s.lo2, s.hi1 + s.hi2);
}

bool approx_equal(const JointLottery& a, const JointLottery& b, double tol) {
  if (a.size() != b.size() || !(a.space() == b.space())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& u = a.atoms()[i];
    const auto& v = b.atoms()[i];
    if (u.x != v.x || u.y != v.y || std::fabs(u.p - v.p) > tol) return false;
  }
  return true;
}

bool approx_equal(const MarginalLottery& a, const MarginalLottery& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& u = a.atoms()[i];
    const auto& v = b.atoms()[i];
    if (u.x != v.x || std::fabs(u.p - v.p) > tol) return false;
  }
  return true;
}

}  // namespace bracketlab
