#ifndef BRACKETLAB_BIVARIATE_INDEX_HPP
#define BRACKETLAB_BIVARIATE_INDEX_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bracketlab/utility_index.hpp"

namespace bracketlab {

namespace bivariate_family {

/// u1(x) + beta u2(y).
struct Additive {
  UtilityIndex u1;
  UtilityIndex u2;
  double beta = 1.0;
};
/// u(x + y): broad bracketing of riskless money.
struct Sum {
  UtilityIndex u;
};
/// sign(alpha) [(1 - beta) x^rho + beta y^rho]^(alpha / rho) on (0, inf)^2.
/// The sign keeps the index increasing for negative alpha.
struct CesCrra {
  double rho = 0.5;
  double alpha = 0.5;
  double beta = 0.5;
};
/// Bilinear interpolation of values[i * ys.size() + j] at (xs[i], ys[j]).
struct TabulatedGrid {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;
};
struct Monomial {
  double coef = 0.0;
  int x_power = 0;
  int y_power = 0;
};
/// sum of coef * x^i * y^j.
struct Polynomial {
  std::vector<Monomial> terms;
};
struct Callable {
  std::function<double(double, double)> f;
  std::string name;
};

}  // namespace bivariate_family

/// The riskless index w(x, y) over outcome profiles.
class BivariateIndex {
 public:
  using Spec = std::variant<bivariate_family::Additive, bivariate_family::Sum,
                            bivariate_family::CesCrra, bivariate_family::TabulatedGrid,
                            bivariate_family::Polynomial, bivariate_family::Callable>;

  static BivariateIndex additive(UtilityIndex u1, UtilityIndex u2, double beta = 1.0);
  static BivariateIndex sum(UtilityIndex u);
  static BivariateIndex ces_crra(double rho, double alpha, double beta);
  static BivariateIndex tabulated(std::vector<double> xs, std::vector<double> ys,
                                  std::vector<double> values);
  static BivariateIndex polynomial(std::vector<bivariate_family::Monomial> terms);
  static BivariateIndex callable(std::function<double(double, double)> f,
                                 std::string name = "callable");

  /// Throws Error(kDomainViolation) outside the family's domain.
  double operator()(double x, double y) const;

  const Spec& spec() const { return *spec_; }
  std::string describe() const;

 private:
  explicit BivariateIndex(Spec spec);

  std::shared_ptr<const Spec> spec_;
};

}  // namespace bracketlab

#endif  // BRACKETLAB_BIVARIATE_INDEX_HPP
