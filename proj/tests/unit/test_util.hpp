#pragma once

#include <gtest/gtest.h>

#include "geostat/matrix.hpp"

namespace geostat::testing {

inline ::testing::AssertionResult matrices_near(const CMatrix& actual, const CMatrix& expected, double tol) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) {
    return ::testing::AssertionFailure() << "shape " << actual.rows() << "x" << actual.cols() << " vs "
                                         << expected.rows() << "x" << expected.cols();
  }
  const double err = (actual - expected).norm();
  if (err <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "HS distance " << err << " exceeds " << tol << "\nactual:\n"
                                       << actual << "\nexpected:\n"
                                       << expected;
}

inline CMatrix cmat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.begin()->size());
  CMatrix out(n, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = Complex(v, 0.0);
    ++i;
  }
  return out;
}

inline RVector rvec(std::initializer_list<double> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace geostat::testing

#define EXPECT_MATRIX_NEAR(a, b, tol) EXPECT_TRUE(::geostat::testing::matrices_near((a), (b), (tol)))
