#include "bracketlab/utility_index.hpp"

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

[[noreturn]] void domain_error(const UtilityIndex& f, double x) {
  throw Error(ErrorKind::kDomainViolation, num(x) + " outside the domain of " + f.describe());
}

[[noreturn]] void range_error(const UtilityIndex& f, double v) {
  throw Error(ErrorKind::kRangeViolation, num(v) + " outside the range of " + f.describe());
}

constexpr int kMaxBisection = 200;

double bisect(const std::function<double(double)>& f, double target, double lo, double hi) {
  const double tol = 1e-12 * (hi - lo);
  double flo = f(lo);
  if (target <= flo) return lo;
  if (target >= f(hi)) return hi;
  for (int i = 0; i < kMaxBisection && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == target) return mid;
    if (fm < target) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

UtilityIndex::UtilityIndex(Spec spec) : spec_(std::make_shared<const Spec>(std::move(spec))) {}

UtilityIndex UtilityIndex::power(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::kInvalidModel, "power index needs gamma > 0, got " + num(gamma));
  }
  return UtilityIndex(index_family::Power{gamma});
}

UtilityIndex UtilityIndex::exponential(double a) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw Error(ErrorKind::kInvalidModel, "exponential index needs a != 0");
  }
  return UtilityIndex(index_family::Exponential{a});
}

UtilityIndex UtilityIndex::linear(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::kNonpositiveScale, "linear index needs slope > 0, got " + num(a));
  }
  return UtilityIndex(index_family::Linear{a, b});
}

UtilityIndex UtilityIndex::loss_averse_sqrt(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kInvalidModel, "loss aversion needs lambda > 0, got " + num(lambda));
  }
  return UtilityIndex(index_family::LossAverseSqrt{lambda});
}

UtilityIndex UtilityIndex::tabulated(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw Error(ErrorKind::kInvalidModel, "tabulated index needs at least two knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].x) || !std::isfinite(knots[i].y)) {
      throw Error(ErrorKind::kInvalidModel, "tabulated knots must be finite");
    }
    if (i > 0 && !(knots[i].x > knots[i - 1].x && knots[i].y > knots[i - 1].y)) {
      throw Error(ErrorKind::kInvalidModel,
                  "tabulated knots must be strictly increasing in both coordinates");
    }
  }
  return UtilityIndex(index_family::Tabulated{std::move(knots)});
}

UtilityIndex UtilityIndex::callable(std::function<double(double)> f, double lo, double hi,
                                    std::string name) {
  if (!f || !std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorKind::kInvalidModel, "callable index needs a finite domain");
  }
  return UtilityIndex(index_family::Callable{std::move(f), {lo, hi}, std::move(name)});
}

UtilityIndex UtilityIndex::compose(const UtilityIndex& outer, const UtilityIndex& inner) {
  return UtilityIndex(index_family::Composed{std::make_shared<const UtilityIndex>(outer),
                                             std::make_shared<const UtilityIndex>(inner)});
}

double UtilityIndex::forward(double x) const {
  using namespace index_family;
  return std::visit(
      Overloaded{
          [&](const Power& f) {
            if (!(x >= 0.0) || std::isinf(x)) domain_error(*this, x);
            return f.gamma == 1.0 ? x : f.gamma == 0.5 ? std::sqrt(x) : std::pow(x, f.gamma);
          },
          [&](const Exponential& f) {
            if (!std::isfinite(x)) domain_error(*this, x);
            return -std::exp(-f.a * x) / f.a;
          },
          [&](const Linear& f) {
            if (!std::isfinite(x)) domain_error(*this, x);
            return f.a * x + f.b;
          },
          [&](const LossAverseSqrt& f) {
            if (!std::isfinite(x)) domain_error(*this, x);
            return x >= 0.0 ? std::sqrt(x) : -f.lambda * std::sqrt(-x);
          },
          [&](const Tabulated& f) {
            const auto& k = f.knots;
            if (!(x >= k.front().x && x <= k.back().x)) domain_error(*this, x);
            auto it = std::upper_bound(k.begin(), k.end(), x,
                                       [](double v, const Knot& kn) { return v < kn.x; });
            if (it == k.end()) return k.back().y;
            const Knot& b = *it;
            const Knot& a = *(it - 1);
            return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
          },
          [&](const Affine& f) { return f.scale * f.base->forward(x) + f.shift; },
          [&](const Composed& f) {
            const double t = f.inner->forward(x);
            if (!f.outer->domain().contains(t)) domain_error(*this, x);
            return f.outer->forward(t);
          },
          [&](const Callable& f) {
            if (!f.domain.contains(x)) domain_error(*this, x);
            return f.f(x);
          },
      },
      *spec_);
}

double UtilityIndex::inverse(double v) const {
  using namespace index_family;
  return std::visit(
      Overloaded{
          [&](const Power& f) {
            if (!(v >= 0.0) || std::isinf(v)) range_error(*this, v);
            return f.gamma == 1.0 ? v : f.gamma == 0.5 ? v * v : std::pow(v, 1.0 / f.gamma);
          },
          [&](const Exponential& f) {
            const double t = -f.a * v;  // exp(-a x) = -a v must be positive
            if (!(t > 0.0) || !std::isfinite(t)) range_error(*this, v);
            return -std::log(t) / f.a;
          },
          [&](const Linear& f) {
            if (!std::isfinite(v)) range_error(*this, v);
            return (v - f.b) / f.a;
          },
          [&](const LossAverseSqrt& f) {
            if (!std::isfinite(v)) range_error(*this, v);
            if (v >= 0.0) return v * v;
            const double r = v / f.lambda;
            return -(r * r);
          },
          [&](const Tabulated& f) {
            const auto& k = f.knots;
            const double span = k.back().y - k.front().y;
            double t = v;
            if (t < k.front().y && t >= k.front().y - 1e-12 * span) t = k.front().y;
            if (t > k.back().y && t <= k.back().y + 1e-12 * span) t = k.back().y;
            if (!(t >= k.front().y && t <= k.back().y)) range_error(*this, v);
            auto it = std::upper_bound(k.begin(), k.end(), t,
                                       [](double val, const Knot& kn) { return val < kn.y; });
            if (it == k.end()) return k.back().x;
            const Knot& b = *it;
            const Knot& a = *(it - 1);
            return a.x + (b.x - a.x) * (t - a.y) / (b.y - a.y);
          },
          [&](const Affine& f) { return f.base->inverse((v - f.shift) / f.scale); },
          [&](const Composed& f) {
            const double t = f.outer->inverse(v);
            if (!f.inner->range().contains(t)) range_error(*this, v);
            return f.inner->inverse(t);
          },
          [&](const Callable& f) {
            const double lo = f.f(f.domain.lo);
            const double hi = f.f(f.domain.hi);
            const double tol = 1e-12 * std::max(1.0, std::fabs(hi - lo));
            if (!(v >= lo - tol && v <= hi + tol)) range_error(*this, v);
            return bisect(f.f, v, f.domain.lo, f.domain.hi);
          },
      },
      *spec_);
}

Interval UtilityIndex::domain() const {
  using namespace index_family;
  return std::visit(Overloaded{
                        [](const Power&) { return Interval{0.0, kInf}; },
                        [](const Tabulated& f) {
                          return Interval{f.knots.front().x, f.knots.back().x};
                        },
                        [](const Affine& f) { return f.base->domain(); },
                        [](const Composed& f) { return f.inner->domain(); },
                        [](const Callable& f) { return f.domain; },
                        [](const auto&) { return Interval{-kInf, kInf}; },
                    },
                    *spec_);
}

Interval UtilityIndex::range() const {
  using namespace index_family;
  return std::visit(
      Overloaded{
          [](const Power&) { return Interval{0.0, kInf}; },
          [](const Exponential& f) {
            return f.a > 0.0 ? Interval{-kInf, 0.0} : Interval{0.0, kInf};
          },
          [](const Tabulated& f) { return Interval{f.knots.front().y, f.knots.back().y}; },
          [](const Affine& f) {
            const Interval r = f.base->range();
            return Interval{f.scale * r.lo + f.shift, f.scale * r.hi + f.shift};
          },
          [](const Composed& f) {
            const Interval inner = f.inner->range();
            const Interval od = f.outer->domain();
            const Interval orng = f.outer->range();
            const double lo = std::max(inner.lo, od.lo);
            const double hi = std::min(inner.hi, od.hi);
            return Interval{std::isfinite(lo) ? f.outer->forward(lo) : orng.lo,
                            std::isfinite(hi) ? f.outer->forward(hi) : orng.hi};
          },
          [](const Callable& f) { return Interval{f.f(f.domain.lo), f.f(f.domain.hi)}; },
          [](const auto&) { return Interval{-kInf, kInf}; },
      },
      *spec_);
}

std::string UtilityIndex::describe() const {
  using namespace index_family;
  return std::visit(
      Overloaded{
          [](const Power& f) { return "power(" + num(f.gamma) + ")"; },
          [](const Exponential& f) { return "exp(" + num(f.a) + ")"; },
          [](const Linear& f) { return "linear(" + num(f.a) + ", " + num(f.b) + ")"; },
          [](const LossAverseSqrt& f) { return "loss_sqrt(" + num(f.lambda) + ")"; },
          [](const Tabulated& f) {
            return "table(" + std::to_string(f.knots.size()) + " knots)";
          },
          [](const Affine& f) {
            return num(f.scale) + "*" + f.base->describe() + "+" + num(f.shift);
          },
          [](const Composed& f) { return f.outer->describe() + " o " + f.inner->describe(); },
          [](const Callable& f) { return f.name; },
      },
      *spec_);
}

double apply_index(const UtilityIndex& f, double v, Direction direction) {
  return direction == Direction::kForward ? f.forward(v) : f.inverse(v);
}

double ce(const UtilityIndex& f, std::span<const MarginalAtom> atoms) {
  if (atoms.size() == 1) {
    f.forward(atoms[0].x);  // domain check
    return atoms[0].x;
  }
  double eu = 0.0;
  double lo = kInf;
  double hi = -kInf;
  for (const auto& a : atoms) {
    eu += f.forward(a.x) * a.p;
    lo = std::min(lo, a.x);
    hi = std::max(hi, a.x);
  }
  return std::clamp(f.inverse(eu), lo, hi);
}

double ce(const UtilityIndex& f, const MarginalLottery& p) { return ce(f, p.atoms()); }

UtilityIndex affine(const UtilityIndex& f, double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::kNonpositiveScale, "affine scale must be positive, got " + num(a));
  }
  return UtilityIndex(
      index_family::Affine{std::make_shared<const UtilityIndex>(f), a, b});
}

bool strictly_increasing_on_grid(const UtilityIndex& f, double lo, double hi, int points) {
  const Interval d = f.domain();
  lo = std::max(lo, d.lo);
  hi = std::min(hi, d.hi);
  if (!(lo < hi) || points < 2) return true;
  double prev = f.forward(lo);
  for (int i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = f.forward(x);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

}  // namespace bracketlab
