#include "bracketlab/bivariate_index.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

TEST(BivariateIndexTest, AdditiveAndSum) {
  const auto w = BivariateIndex::additive(UtilityIndex::power(0.5), UtilityIndex::power(0.5), 0.9);
  EXPECT_DOUBLE_EQ(w(4.0, 9.0), 2.0 + 0.9 * 3.0);
  const auto s = BivariateIndex::sum(UtilityIndex::exponential(1.0));
  EXPECT_DOUBLE_EQ(s(1.0, 2.0), -std::exp(-3.0));
}

TEST(BivariateIndexTest, CesCrraMatchesFormulaAndStaysIncreasing) {
  const auto w = BivariateIndex::ces_crra(0.5, 0.5, 0.25);
  EXPECT_NEAR(w(4.0, 9.0), 0.75 * 2.0 + 0.25 * 3.0, 1e-12);
  const auto neg = BivariateIndex::ces_crra(0.5, -2.0, 0.5);
  EXPECT_LT(neg(1.0, 1.0), neg(2.0, 1.0));
  EXPECT_LT(neg(1.0, 1.0), neg(1.0, 2.0));
  EXPECT_THROW(w(0.0, 1.0), Error);
  EXPECT_THROW(BivariateIndex::ces_crra(1.0, 0.5, 0.5), Error);
  EXPECT_THROW(BivariateIndex::ces_crra(0.5, 0.0, 0.5), Error);
}

TEST(BivariateIndexTest, TabulatedGridIsBilinear) {
  const auto w = BivariateIndex::tabulated({0.0, 1.0}, {0.0, 2.0}, {0.0, 2.0, 1.0, 5.0});
  EXPECT_DOUBLE_EQ(w(0.0, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(w(1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(w(0.5, 1.0), 0.25 * (0.0 + 2.0 + 1.0 + 5.0));
  EXPECT_THROW(w(2.0, 0.0), Error);
}

TEST(BivariateIndexTest, PolynomialTerms) {
  const auto w = BivariateIndex::polynomial({{1.0, 1, 1}, {1.0, 1, 0}, {1.0, 0, 1}});
  EXPECT_DOUBLE_EQ(w(2.0, 3.0), 6.0 + 2.0 + 3.0);
  EXPECT_THROW(BivariateIndex::polynomial({{1.0, -1, 0}}), Error);
}

}  // namespace
}  // namespace bracketlab
