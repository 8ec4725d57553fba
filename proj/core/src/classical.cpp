#include "geostat/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "geostat/errors.hpp"
#include "geostat/random.hpp"

namespace geostat {

ProbabilityVector::ProbabilityVector(const RVector& p) : p_(p) {
  if (p_.size() == 0) throw DomainError("empty probability vector");
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_(i)) || p_(i) < -1e-12) {
      throw DomainError("probability entry " + std::to_string(i) + " is negative or not finite");
    }
    p_(i) = std::max(p_(i), 0.0);
  }
  const double total = p_.sum();
  if (!(total > 0.0)) throw DomainError("probability vector sums to zero");
  p_ /= total;
}

StochasticMatrix::StochasticMatrix(const RMatrix& t) : t_(t) {
  if (t_.size() == 0) throw DomainError("empty stochastic matrix");
  for (Eigen::Index j = 0; j < t_.cols(); ++j) {
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (!(t_(i, j) >= 0.0)) throw DomainError("stochastic matrix has a negative entry");
    }
    if (std::abs(t_.col(j).sum() - 1.0) > 1e-12) {
      throw DomainError("column " + std::to_string(j) + " of stochastic matrix does not sum to 1");
    }
  }
}

StochasticMatrix StochasticMatrix::coarse_graining() {
  RMatrix t(2, 3);
  t << 1, 0, 0,
       0, 1, 1;
  return StochasticMatrix(t);
}

TangentVector::TangentVector(const RVector& dp) : dp_(dp) {
  if (std::abs(dp_.sum()) > 1e-12) throw DomainError("tangent vector does not sum to zero");
}

double fisher_rao_ds2(const ProbabilityVector& p, const TangentVector& dp) {
  if (p.size() != dp.size()) throw DimensionMismatch("fisher_rao_ds2: length mismatch");
  if (!p.strictly_positive()) throw BoundaryError("Fisher-Rao metric diverges on the simplex boundary");
  return 0.25 * (dp.values().array().square() / p.values().array()).sum();
}

RVector sphere_embed(const ProbabilityVector& p) { return p.values().array().sqrt(); }

double fr_geodesic_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw DimensionMismatch("fr_geodesic_distance: length mismatch");
  const double c = (p.values().array() * q.values().array()).sqrt().sum();
  return std::acos(std::clamp(c, 0.0, 1.0));
}

double flat_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw DimensionMismatch("flat_distance: length mismatch");
  return (p.values() - q.values()).norm();
}

ProbabilityVector apply_stochastic(const StochasticMatrix& t, const ProbabilityVector& p) {
  if (t.cols() != p.size()) throw DimensionMismatch("apply_stochastic: T has wrong column count");
  return ProbabilityVector(t.matrix() * p.values());
}

StochasticMatrix sample_stochastic_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  RMatrix t(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    t.col(j) = sample_flat_dirichlet(rng, rows);
    // Put the rounding residue on the largest entry so the column sums to 1.
    Eigen::Index k;
    t.col(j).maxCoeff(&k);
    t(k, j) += 1.0 - t.col(j).sum();
  }
  return StochasticMatrix(t);
}

MonotonicityReport monotonicity_stress(std::uint64_t seed, int trials, SimplexDistance distance) {
  MonotonicityReport report;
  report.trials = std::max(trials, 0);
  report.max_excess = trials > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
  const auto dist = [distance](const ProbabilityVector& a, const ProbabilityVector& b) {
    return distance == SimplexDistance::fisher_rao ? fr_geodesic_distance(a, b) : flat_distance(a, b);
  };
  for (int k = 0; k < trials; ++k) {
    Rng rng = make_rng(seed, "monotonicity", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 5);
    const Eigen::Index m = sample_index(rng, 2, 5);
    const StochasticMatrix t = sample_stochastic_matrix(rng, m, n);
    const ProbabilityVector p(sample_flat_dirichlet(rng, n));
    const ProbabilityVector q(sample_flat_dirichlet(rng, n));
    const double excess = dist(apply_stochastic(t, p), apply_stochastic(t, q)) - dist(p, q);
    report.max_excess = std::max(report.max_excess, excess);
    if (excess > 1e-9) ++report.violations;
  }
  return report;
}

EllipseReport multinomial_ellipse_experiment(const ProbabilityVector& p, long samples, int trials,
                                             std::uint64_t seed) {
  if (!p.strictly_positive()) throw BoundaryError("multinomial experiment needs an interior point");
  if (samples < 100) throw DomainError("multinomial experiment needs at least 100 samples per trial");
  if (trials < 2) throw DomainError("multinomial experiment needs at least 2 trials");

  const Eigen::Index n = p.size();
  const RVector& pv = p.values();
  RVector mean = RVector::Zero(n);
  RMatrix m2 = RMatrix::Zero(n, n);

  RVector f(n);
  for (int k = 0; k < trials; ++k) {
    Rng rng = make_rng(seed, "multinomial", static_cast<std::uint64_t>(k));
    // Multinomial draw as a chain of conditional binomials.
    long remaining = samples;
    double mass = 1.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double prob = std::clamp(pv(i) / mass, 0.0, 1.0);
      const long c = remaining > 0 ? std::binomial_distribution<long>(remaining, prob)(rng) : 0;
      f(i) = static_cast<double>(c);
      remaining -= c;
      mass -= pv(i);
    }
    f(n - 1) = static_cast<double>(remaining);
    f /= static_cast<double>(samples);

    const RVector d = f - pv;
    mean += d;
    m2 += d * d.transpose();
  }
  mean /= trials;
  // Sample covariance about the empirical mean.
  RMatrix emp = (m2 - static_cast<double>(trials) * mean * mean.transpose()) / (trials - 1);

  RMatrix pred = (RMatrix(pv.asDiagonal()) - pv * pv.transpose()) / static_cast<double>(samples);

  EllipseReport report{emp, pred, 0.0};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      report.max_rel_err = std::max(report.max_rel_err, std::abs(emp(i, j) - pred(i, j)) / std::abs(pred(i, j)));
  return report;
}

double jeffreys_density(const ProbabilityVector& p) {
  if (!p.strictly_positive()) throw BoundaryError("Jeffreys density diverges on the simplex boundary");
  const double n = static_cast<double>(p.size());
  // Normalizer Gamma(N/2) / pi^(N/2).
  const double log_norm = std::lgamma(0.5 * n) - 0.5 * n * std::log(std::numbers::pi);
  const double log_kernel = -0.5 * p.values().array().log().sum();
  return std::exp(log_norm + log_kernel);
}

}  // namespace geostat
