#ifndef BRACKETLAB_TESTS_SUPPORT_MODELS_HPP
#define BRACKETLAB_TESTS_SUPPORT_MODELS_HPP

#include "bracketlab/representations.hpp"

namespace bracketlab::testing {

inline UtilityIndex sqrt_index() { return UtilityIndex::power(0.5); }

/// EU money model u(x + y), u = CARA(0.1).
inline ModelSpec eu_money() {
  return model::Eu{BivariateIndex::sum(UtilityIndex::exponential(0.1))};
}

/// Summed certainty equivalents under the loss-averse square root.
inline ModelSpec nb_loss_averse(double lambda = 2.0) {
  const auto v = UtilityIndex::loss_averse_sqrt(lambda);
  return model::Nb{BivariateIndex::sum(UtilityIndex::linear()), v, v};
}

/// w(x, y) = x + y, v1 = v2 = sqrt on nonnegative outcomes.
inline ModelSpec nb_sqrt() {
  return model::Nb{BivariateIndex::sum(UtilityIndex::linear()), sqrt_index(), sqrt_index()};
}

inline BivariateIndex x_plus_y_squared() {
  return BivariateIndex::polynomial({{1.0, 1, 0}, {1.0, 0, 2}});
}

/// w(x, y) = x + y^2, v2 = sqrt; lives on [0, inf)^2.
inline ModelSpec bib_fixture() { return model::Bib{x_plus_y_squared(), sqrt_index()}; }

/// BIB on the money plane: w(x, y) = x + y + xy / 50 + x^2 / 100, v2 = CARA(0.2).
inline ModelSpec bib_money() {
  return model::Bib{BivariateIndex::polynomial(
                        {{1.0, 1, 0}, {1.0, 0, 1}, {0.02, 1, 1}, {0.01, 2, 0}}),
                    UtilityIndex::exponential(0.2)};
}

inline ModelSpec eu_cn_fixture() {
  return model::EuCn{BivariateIndex::polynomial({{1.0, 1, 0}, {1.0, 0, 1}, {0.05, 1, 1}})};
}

/// w(x, y) = x + y + s(y) x^2 / 400 with s(y) = (y - 2)(y - 5): the slices
/// at y = 2 and y = 5 are affine in x, so H2 = (2, 5) is admissible.
inline BivariateIndex gbib_sigma_w() {
  return BivariateIndex::polynomial({{1.0, 1, 0},
                                     {1.0, 0, 1},
                                     {10.0 / 400.0, 2, 0},
                                     {-7.0 / 400.0, 2, 1},
                                     {1.0 / 400.0, 2, 2}});
}

inline ModelSpec gbib_sigma_fixture() {
  return model::GbibCn{gbib_sigma_w(), UtilityIndex::linear(), UtilityIndex::linear(),
                       OpenSet1D::make({{2.0, 5.0}})};
}

/// Consumption KM-BIB with u = sqrt and extra curvature phi.
inline ModelSpec km_bib(const UtilityIndex& phi, double beta = 0.9) {
  return model::KmBib{phi, UtilityIndex::power(0.5), beta};
}

}  // namespace bracketlab::testing

#endif  // BRACKETLAB_TESTS_SUPPORT_MODELS_HPP
