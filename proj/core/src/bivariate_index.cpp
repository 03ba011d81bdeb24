#include "bracketlab/bivariate_index.hpp"

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

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

// Index of the cell [v[k], v[k+1]] holding x; v has at least two entries.
std::size_t cell(const std::vector<double>& v, double x) {
  auto it = std::upper_bound(v.begin(), v.end(), x);
  const auto k = static_cast<std::size_t>(it - v.begin());
  return std::clamp<std::size_t>(k == 0 ? 0 : k - 1, 0, v.size() - 2);
}

}  // namespace

BivariateIndex::BivariateIndex(Spec spec) : spec_(std::make_shared<const Spec>(std::move(spec))) {}

BivariateIndex BivariateIndex::additive(UtilityIndex u1, UtilityIndex u2, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::kInvalidModel, "additive index needs beta > 0");
  }
  return BivariateIndex(bivariate_family::Additive{std::move(u1), std::move(u2), beta});
}

BivariateIndex BivariateIndex::sum(UtilityIndex u) {
  return BivariateIndex(bivariate_family::Sum{std::move(u)});
}

BivariateIndex BivariateIndex::ces_crra(double rho, double alpha, double beta) {
  if (!(rho < 1.0) || rho == 0.0 || !(alpha < 1.0) || alpha == 0.0 || !(beta > 0.0) ||
      !(beta < 1.0)) {
    throw Error(ErrorKind::kDegenerateParameters,
                "CES-CRRA needs rho < 1, rho != 0, alpha < 1, alpha != 0, 0 < beta < 1");
  }
  return BivariateIndex(bivariate_family::CesCrra{rho, alpha, beta});
}

BivariateIndex BivariateIndex::tabulated(std::vector<double> xs, std::vector<double> ys,
                                         std::vector<double> values) {
  if (xs.size() < 2 || ys.size() < 2 || values.size() != xs.size() * ys.size() ||
      !strictly_increasing(xs) || !strictly_increasing(ys)) {
    throw Error(ErrorKind::kInvalidModel,
                "tabulated grid needs >= 2 strictly increasing knots per axis and a full table");
  }
  return BivariateIndex(
      bivariate_family::TabulatedGrid{std::move(xs), std::move(ys), std::move(values)});
}

BivariateIndex BivariateIndex::polynomial(std::vector<bivariate_family::Monomial> terms) {
  for (const auto& t : terms) {
    if (t.x_power < 0 || t.y_power < 0 || !std::isfinite(t.coef)) {
      throw Error(ErrorKind::kInvalidModel, "polynomial exponents must be nonnegative integers");
    }
  }
  return BivariateIndex(bivariate_family::Polynomial{std::move(terms)});
}

BivariateIndex BivariateIndex::callable(std::function<double(double, double)> f,
                                        std::string name) {
  if (!f) throw Error(ErrorKind::kInvalidModel, "empty callable");
  return BivariateIndex(bivariate_family::Callable{std::move(f), std::move(name)});
}

double BivariateIndex::operator()(double x, double y) const {
  using namespace bivariate_family;
  return std::visit(
      Overloaded{
          [&](const Additive& w) { return w.u1(x) + w.beta * w.u2(y); },
          [&](const Sum& w) { return w.u(x + y); },
          [&](const CesCrra& w) {
            if (!(x > 0.0) || !(y > 0.0) || std::isinf(x) || std::isinf(y)) {
              throw Error(ErrorKind::kDomainViolation,
                          "CES-CRRA index needs positive consumption, got (" + num(x) + ", " +
                              num(y) + ")");
            }
            const double agg =
                (1.0 - w.beta) * std::pow(x, w.rho) + w.beta * std::pow(y, w.rho);
            return std::copysign(std::pow(agg, w.alpha / w.rho), w.alpha);
          },
          [&](const TabulatedGrid& w) {
            if (!(x >= w.xs.front() && x <= w.xs.back() && y >= w.ys.front() &&
                  y <= w.ys.back())) {
              throw Error(ErrorKind::kDomainViolation,
                          "(" + num(x) + ", " + num(y) + ") outside tabulated grid");
            }
            const std::size_t i = cell(w.xs, x);
            const std::size_t j = cell(w.ys, y);
            const std::size_t ny = w.ys.size();
            const double tx = (x - w.xs[i]) / (w.xs[i + 1] - w.xs[i]);
            const double ty = (y - w.ys[j]) / (w.ys[j + 1] - w.ys[j]);
            const double v00 = w.values[i * ny + j];
            const double v01 = w.values[i * ny + j + 1];
            const double v10 = w.values[(i + 1) * ny + j];
            const double v11 = w.values[(i + 1) * ny + j + 1];
            return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
          },
          [&](const Polynomial& w) {
            double s = 0.0;
            for (const auto& t : w.terms) {
              s += t.coef * std::pow(x, t.x_power) * std::pow(y, t.y_power);
            }
            return s;
          },
          [&](const Callable& w) { return w.f(x, y); },
      },
      *spec_);
}

std::string BivariateIndex::describe() const {
  using namespace bivariate_family;
  return std::visit(
      Overloaded{
          [](const Additive& w) {
            return w.u1.describe() + "(x) + " + num(w.beta) + "*" + w.u2.describe() + "(y)";
          },
          [](const Sum& w) { return w.u.describe() + "(x+y)"; },
          [](const CesCrra& w) {
            return "ces_crra(rho=" + num(w.rho) + ", alpha=" + num(w.alpha) +
                   ", beta=" + num(w.beta) + ")";
          },
          [](const TabulatedGrid& w) {
            return "table(" + std::to_string(w.xs.size()) + "x" + std::to_string(w.ys.size()) +
                   ")";
          },
          [](const Polynomial& w) {
            return "poly(" + std::to_string(w.terms.size()) + " terms)";
          },
          [](const Callable& w) { return w.name; },
      },
      *spec_);
}

}  // namespace bracketlab
