#include "bracketlab/representations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Calls fn(key, slice) for each value of `given` with the conditional
// distribution of the other coordinate, weights summing to one.
template <class Fn>
void for_each_slice(const JointLottery& lottery, Source given, Fn&& fn) {
  std::vector<JointAtom> atoms(lottery.atoms().begin(), lottery.atoms().end());
  if (given == Source::kSecond) {
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const JointAtom& a, const JointAtom& b) { return a.y < b.y; });
  }
  auto key = [given](const JointAtom& a) { return given == Source::kFirst ? a.x : a.y; };
  auto val = [given](const JointAtom& a) { return given == Source::kFirst ? a.y : a.x; };
  std::vector<MarginalAtom> slice;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double k = key(atoms[i]);
    std::size_t j = i;
    double mass = 0.0;
    while (j < atoms.size() && key(atoms[j]) == k) mass += atoms[j++].p;
    slice.clear();
    for (std::size_t t = i; t < j; ++t) slice.push_back({val(atoms[t]), atoms[t].p / mass});
    fn(k, mass, std::span<const MarginalAtom>(slice));
    i = j;
  }
}

void require_nonnegative(const JointLottery& lottery, std::string_view family) {
  for (const auto& a : lottery.atoms()) {
    if (a.x < 0.0 || a.y < 0.0) {
      throw Error(ErrorKind::kDomainViolation,
                  std::string(family) + " needs nonnegative consumption, got (" + num(a.x) +
                      ", " + num(a.y) + ")");
    }
  }
}

void require_positive(const JointLottery& lottery, std::string_view family) {
  for (const auto& a : lottery.atoms()) {
    if (!(a.x > 0.0) || !(a.y > 0.0)) {
      throw Error(ErrorKind::kDomainViolation,
                  std::string(family) + " needs positive consumption, got (" + num(a.x) + ", " +
                      num(a.y) + ")");
    }
  }
}

void require_unit(double v, std::string_view name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorKind::kInvalidModel, std::string(name) + " must lie in [0, 1], got " + num(v));
  }
}

void require_crra(double rho, double alpha, double beta) {
  if (!(rho < 1.0) || rho == 0.0 || !(alpha < 1.0) || alpha == 0.0 || !(beta > 0.0) ||
      !(beta < 1.0)) {
    throw Error(ErrorKind::kDegenerateParameters,
                "CRRA-CES needs rho < 1, rho != 0, alpha < 1, alpha != 0 and 0 < beta < 1");
  }
}

double narrow_ce(const UtilityIndex& f, const JointLottery& lottery, Source s) {
  return ce(f, marginal(lottery, s));
}

double eval_nb(const BivariateIndex& w, const UtilityIndex& v1, const UtilityIndex& v2,
               const JointLottery& lottery) {
  return w(narrow_ce(v1, lottery, Source::kFirst), narrow_ce(v2, lottery, Source::kSecond));
}

double eval_bib_cn(const BivariateIndex& w, const UtilityIndex& v2, const JointLottery& lottery) {
  const double y = narrow_ce(v2, lottery, Source::kSecond);
  double s = 0.0;
  const MarginalLottery p = marginal(lottery, Source::kFirst);
  for (const auto& a : p.atoms()) s += w(a.x, y) * a.p;
  return s;
}

double eval_fib_cn(const BivariateIndex& w, const UtilityIndex& v1, const JointLottery& lottery) {
  const double x = narrow_ce(v1, lottery, Source::kFirst);
  double s = 0.0;
  const MarginalLottery q = marginal(lottery, Source::kSecond);
  for (const auto& a : q.atoms()) s += w(x, a.x) * a.p;
  return s;
}

double evaluate_impl(const ModelSpec& spec, const JointLottery& lottery) {
  using namespace model;
  return std::visit(
      Overloaded{
          [&](const Eu& m) {
            double s = 0.0;
            for (const auto& a : lottery.atoms()) s += m.w(a.x, a.y) * a.p;
            return s;
          },
          [&](const EuCn& m) {
            const auto p = marginal(lottery, Source::kFirst);
            const auto q = marginal(lottery, Source::kSecond);
            double s = 0.0;
            for (const auto& a : p.atoms()) {
              for (const auto& b : q.atoms()) s += m.w(a.x, b.x) * a.p * b.p;
            }
            return s;
          },
          [&](const Nb& m) { return eval_nb(m.w, m.v1, m.v2, lottery); },
          [&](const Bib& m) {
            double s = 0.0;
            for_each_slice(lottery, Source::kFirst,
                           [&](double x, double mass, std::span<const MarginalAtom> slice) {
                             s += m.w(x, ce(m.v2, slice)) * mass;
                           });
            return s;
          },
          [&](const Fib& m) {
            double s = 0.0;
            for_each_slice(lottery, Source::kSecond,
                           [&](double y, double mass, std::span<const MarginalAtom> slice) {
                             s += m.w(ce(m.v1, slice), y) * mass;
                           });
            return s;
          },
          [&](const BibCn& m) { return eval_bib_cn(m.w, m.v2, lottery); },
          [&](const FibCn& m) { return eval_fib_cn(m.w, m.v1, lottery); },
          [&](const GbibCn& m) {
            const double y = narrow_ce(m.v2, lottery, Source::kSecond);
            if (m.h2.contains(y)) return eval_bib_cn(m.w, m.v2, lottery);
            return m.w(narrow_ce(m.v1, lottery, Source::kFirst), y);
          },
          [&](const GfibCn& m) {
            const double x = narrow_ce(m.v1, lottery, Source::kFirst);
            if (m.h1.contains(x)) return eval_fib_cn(m.w, m.v1, lottery);
            return m.w(x, narrow_ce(m.v2, lottery, Source::kSecond));
          },
          [&](const Edu& m) {
            require_nonnegative(lottery, "EDU");
            double s = 0.0;
            for (const auto& a : lottery.atoms()) s += (m.u(a.x) + m.beta * m.u(a.y)) * a.p;
            return s;
          },
          [&](const Km& m) {
            require_nonnegative(lottery, "KM");
            double s = 0.0;
            for (const auto& a : lottery.atoms()) {
              s += m.phi((m.u(a.x) + m.beta * m.u(a.y)) / (1.0 + m.beta)) * a.p;
            }
            return s;
          },
          [&](const KmBib& m) {
            require_nonnegative(lottery, "KM-BIB");
            double s = 0.0;
            for_each_slice(lottery, Source::kFirst,
                           [&](double x, double mass, std::span<const MarginalAtom> slice) {
                             double future;
                             if (slice.size() == 1) {
                               future = m.u(slice[0].x);
                             } else {
                               double e = 0.0;
                               for (const auto& b : slice) e += m.phi(m.u(b.x)) * b.p;
                               future = m.phi.inverse(e);
                             }
                             s += m.phi(m.u(x) + m.beta * future) * mass;
                           });
            return s;
          },
          [&](const CrraCesKmBib& m) {
            require_positive(lottery, "CRRA-CES-KMBIB");
            double s = 0.0;
            for_each_slice(lottery, Source::kFirst,
                           [&](double c1, double mass, std::span<const MarginalAtom> slice) {
                             double cont;
                             if (slice.size() == 1) {
                               cont = slice[0].x;
                             } else {
                               double e = 0.0;
                               for (const auto& b : slice) e += std::pow(b.x, m.alpha) * b.p;
                               cont = std::pow(e, 1.0 / m.alpha);
                             }
                             const double agg = (1.0 - m.beta) * std::pow(c1, m.rho) +
                                                m.beta * std::pow(cont, m.rho);
                             s += std::pow(agg, m.alpha / m.rho) * mass;
                           });
            return std::pow(s, 1.0 / m.alpha);
          },
          [&](const LambdaMix& m) {
            if (!is_product(lottery)) {
              throw Error(ErrorKind::kNonProductLottery,
                          "LambdaMix is defined on product lotteries only");
            }
            const auto p = marginal(lottery, Source::kFirst);
            const auto q = marginal(lottery, Source::kSecond);
            double broad = 0.0;
            double narrow = 0.0;
            for (const auto& a : p.atoms()) {
              narrow += m.u(a.x) * a.p;
              for (const auto& b : q.atoms()) broad += m.u(a.x + b.x) * a.p * b.p;
            }
            for (const auto& b : q.atoms()) narrow += m.u(b.x) * b.p;
            return m.lambda * broad + (1.0 - m.lambda) * narrow;
          },
      },
      spec);
}

// Points of [lo, hi] at which f can be evaluated.
std::vector<double> grid_points(double lo, double hi, int points) {
  std::vector<double> out;
  if (points < 2 || !(lo < hi)) return out;
  for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
  return out;
}

bool try_eval(const BivariateIndex& w, double x, double y, double& out) {
  try {
    out = w(x, y);
    return std::isfinite(out);
  } catch (const Error&) {
    return false;
  }
}

bool try_eval(const UtilityIndex& f, double x, double& out) {
  try {
    out = f(x);
    return std::isfinite(out);
  } catch (const Error&) {
    return false;
  }
}

void check_index(const UtilityIndex& f, double lo, double hi, int points, std::string_view name,
                 ValidationReport& report) {
  if (!strictly_increasing_on_grid(f, lo, hi, points)) {
    report.passed = false;
    report.failures.push_back(std::string(name) + " is not strictly increasing on the grid");
  }
}

void check_bivariate(const BivariateIndex& w, const ValidationGrid& g, ValidationReport& report) {
  const auto xs = grid_points(g.lo1, g.hi1, g.points);
  const auto ys = grid_points(g.lo2, g.hi2, g.points);
  bool ok = true;
  for (double y : ys) {
    bool have = false;
    double prev = 0.0;
    for (double x : xs) {
      double v;
      if (!try_eval(w, x, y, v)) continue;
      if (have && !(v > prev)) ok = false;
      prev = v;
      have = true;
    }
  }
  for (double x : xs) {
    bool have = false;
    double prev = 0.0;
    for (double y : ys) {
      double v;
      if (!try_eval(w, x, y, v)) continue;
      if (have && !(v > prev)) ok = false;
      prev = v;
      have = true;
    }
  }
  if (!ok) {
    report.passed = false;
    report.failures.push_back("w is not strictly increasing in each argument on the grid");
  }
}

// Fits w(., b) = a v(.) + c along `xs` (or w(b, .) when `slice_first` is
// false) from the two extreme admissible points and measures the deviation.
BoundaryFit fit_boundary(const BivariateIndex& w, const UtilityIndex& v, double b,
                         const std::vector<double>& xs, bool slice_first) {
  BoundaryFit fit;
  fit.boundary = b;
  std::vector<std::pair<double, double>> pts;  // (v(x), w)
  for (double x : xs) {
    double vx;
    double wx;
    if (!try_eval(v, x, vx)) continue;
    if (!(slice_first ? try_eval(w, x, b, wx) : try_eval(w, b, x, wx))) continue;
    pts.emplace_back(vx, wx);
  }
  if (pts.size() < 2 || pts.back().first == pts.front().first) {
    fit.deviation = kInf;
    return fit;
  }
  fit.scale = (pts.back().second - pts.front().second) / (pts.back().first - pts.front().first);
  fit.shift = pts.front().second - fit.scale * pts.front().first;
  for (const auto& [vx, wx] : pts) {
    const double dev = std::abs(wx - (fit.scale * vx + fit.shift)) / std::max(1.0, std::abs(wx));
    fit.deviation = std::max(fit.deviation, dev);
  }
  fit.passed = fit.scale > 0.0 && fit.deviation <= kBoundaryTolerance;
  return fit;
}

void check_boundaries(const BivariateIndex& w, const UtilityIndex& v, const OpenSet1D& h,
                      const std::vector<double>& axis, bool slice_first, std::string_view label,
                      ValidationReport& report) {
  for (double b : h.finite_boundary()) {
    BoundaryFit fit = fit_boundary(w, v, b, axis, slice_first);
    report.worst_deviation = std::max(report.worst_deviation, fit.deviation);
    if (!fit.passed) {
      report.passed = false;
      report.failures.push_back(std::string(label) + " at boundary " + num(b) +
                                " is not a positive affine transform (scale " + num(fit.scale) +
                                ", deviation " + num(fit.deviation) + ")");
    }
    report.boundaries.push_back(fit);
  }
}

}  // namespace

OpenSet1D OpenSet1D::make(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (!(iv.lo < iv.hi)) {
      throw Error(ErrorKind::kInvalidModel,
                  "open interval (" + num(iv.lo) + ", " + num(iv.hi) + ") is empty");
    }
    if (iv.lo < 0.0 && iv.hi > 0.0) {
      throw Error(ErrorKind::kInvalidModel,
                  "open set must exclude 0, got (" + num(iv.lo) + ", " + num(iv.hi) + ")");
    }
    if (i > 0 && intervals[i - 1].hi > iv.lo) {
      throw Error(ErrorKind::kInvalidModel, "open intervals overlap");
    }
  }
  OpenSet1D out;
  out.intervals_ = std::move(intervals);
  return out;
}

bool OpenSet1D::contains(double x) const {
  for (const auto& iv : intervals_) {
    if (x > iv.lo && x < iv.hi) return true;
  }
  return false;
}

std::vector<double> OpenSet1D::finite_boundary() const {
  std::vector<double> out;
  for (const auto& iv : intervals_) {
    if (std::isfinite(iv.lo)) out.push_back(iv.lo);
    if (std::isfinite(iv.hi)) out.push_back(iv.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view family_name(const ModelSpec& model) {
  using namespace model;
  return std::visit(Overloaded{
                        [](const Eu&) { return "EU"; },
                        [](const EuCn&) { return "EU-CN"; },
                        [](const Nb&) { return "NB"; },
                        [](const Bib&) { return "BIB"; },
                        [](const Fib&) { return "FIB"; },
                        [](const BibCn&) { return "BIB-CN"; },
                        [](const FibCn&) { return "FIB-CN"; },
                        [](const GbibCn&) { return "GBIB-CN"; },
                        [](const GfibCn&) { return "GFIB-CN"; },
                        [](const Edu&) { return "EDU"; },
                        [](const Km&) { return "KM"; },
                        [](const KmBib&) { return "KM-BIB"; },
                        [](const CrraCesKmBib&) { return "CRRA-CES-KMBIB"; },
                        [](const LambdaMix&) { return "LambdaMix"; },
                    },
                    model);
}

void check_parameters(const ModelSpec& spec) {
  using namespace model;
  std::visit(Overloaded{
                 [](const Edu& m) { require_unit(m.beta, "beta"); },
                 [](const Km& m) { require_unit(m.beta, "beta"); },
                 [](const KmBib& m) { require_unit(m.beta, "beta"); },
                 [](const CrraCesKmBib& m) { require_crra(m.rho, m.alpha, m.beta); },
                 [](const LambdaMix& m) { require_unit(m.lambda, "lambda"); },
                 [](const auto&) {},
             },
             spec);
}

double evaluate(const ModelSpec& model, const JointLottery& lottery) {
  check_parameters(model);
  return evaluate_impl(model, lottery);
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kStrictlyPrefers:
      return "StrictlyPrefers";
    case Verdict::kIndifferent:
      return "Indifferent";
    case Verdict::kStrictlyDispreferred:
      return "StrictlyDispreferred";
  }
  return "Unknown";
}

Preference compare_values(double a, double b, double band) {
  Preference out{Verdict::kIndifferent, a, b, band};
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= band * scale) return out;
  out.verdict = a > b ? Verdict::kStrictlyPrefers : Verdict::kStrictlyDispreferred;
  return out;
}

Preference compare(const ModelSpec& model, const JointLottery& a, const JointLottery& b,
                   double band) {
  return compare_values(evaluate(model, a), evaluate(model, b), band);
}

ValidationReport validate_model(const ModelSpec& spec, const ValidationGrid& g) {
  using namespace model;
  ValidationReport report;
  try {
    check_parameters(spec);
  } catch (const Error& e) {
    report.passed = false;
    report.failures.emplace_back(e.what());
    return report;
  }
  const auto xs = grid_points(g.lo1, g.hi1, g.points);
  const auto ys = grid_points(g.lo2, g.hi2, g.points);
  const double lo = std::min(g.lo1, g.lo2);
  const double hi = std::max(g.hi1, g.hi2);
  std::visit(
      Overloaded{
          [&](const Eu& m) { check_bivariate(m.w, g, report); },
          [&](const EuCn& m) { check_bivariate(m.w, g, report); },
          [&](const Nb& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v1, g.lo1, g.hi1, g.points, "v1", report);
            check_index(m.v2, g.lo2, g.hi2, g.points, "v2", report);
          },
          [&](const Bib& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v2, g.lo2, g.hi2, g.points, "v2", report);
          },
          [&](const Fib& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v1, g.lo1, g.hi1, g.points, "v1", report);
          },
          [&](const BibCn& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v2, g.lo2, g.hi2, g.points, "v2", report);
          },
          [&](const FibCn& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v1, g.lo1, g.hi1, g.points, "v1", report);
          },
          [&](const GbibCn& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v1, g.lo1, g.hi1, g.points, "v1", report);
            check_index(m.v2, g.lo2, g.hi2, g.points, "v2", report);
            check_boundaries(m.w, m.v1, m.h2, xs, true, "w(., y) vs v1", report);
          },
          [&](const GfibCn& m) {
            check_bivariate(m.w, g, report);
            check_index(m.v1, g.lo1, g.hi1, g.points, "v1", report);
            check_index(m.v2, g.lo2, g.hi2, g.points, "v2", report);
            check_boundaries(m.w, m.v2, m.h1, ys, false, "w(x, .) vs v2", report);
          },
          [&](const Edu& m) { check_index(m.u, lo, hi, g.points, "u", report); },
          [&](const Km& m) {
            check_index(m.u, lo, hi, g.points, "u", report);
            const Interval r = m.u.range();
            check_index(m.phi, std::max(r.lo, -1e6), std::min(r.hi, 1e6), g.points, "phi",
                        report);
          },
          [&](const KmBib& m) {
            check_index(m.u, lo, hi, g.points, "u", report);
            const Interval r = m.u.range();
            check_index(m.phi, std::max(r.lo, -1e6), std::min(r.hi, 1e6), g.points, "phi",
                        report);
          },
          [&](const CrraCesKmBib&) {},
          [&](const LambdaMix& m) {
            check_index(m.u, g.lo1 + g.lo2, g.hi1 + g.hi2, g.points, "u", report);
          },
      },
      spec);
  return report;
}

}  // namespace bracketlab
