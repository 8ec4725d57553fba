#pragma once

#include <cstdint>
#include <random>

#include "geostat/matrix.hpp"

namespace geostat {

/// A point of the probability simplex. Entries must be non-negative (to
/// within 1e-12); the vector is renormalized to unit sum on construction.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(const RVector& p);

  Eigen::Index size() const { return p_.size(); }
  const RVector& values() const { return p_; }
  double operator[](Eigen::Index i) const { return p_(i); }
  bool strictly_positive() const { return p_.minCoeff() > 0.0; }

 private:
  RVector p_;
};

/// Column-stochastic M x N matrix: non-negative entries, unit column sums.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(const RMatrix& t);

  Eigen::Index rows() const { return t_.rows(); }
  Eigen::Index cols() const { return t_.cols(); }
  const RMatrix& matrix() const { return t_; }

  /// The 2x3 coarse graining that merges outcomes 2 and 3.
  static StochasticMatrix coarse_graining();

 private:
  RMatrix t_;
};

/// Displacement tangent to the simplex (entries sum to zero).
class TangentVector {
 public:
  explicit TangentVector(const RVector& dp);
  Eigen::Index size() const { return dp_.size(); }
  const RVector& values() const { return dp_; }

 private:
  RVector dp_;
};

/// ds^2 = (1/4) sum_i dp_i^2 / p_i. Throws BoundaryError unless p > 0.
double fisher_rao_ds2(const ProbabilityVector& p, const TangentVector& dp);

/// x_i = sqrt(p_i); a point of the positive octant of the unit sphere.
RVector sphere_embed(const ProbabilityVector& p);

/// arccos(sum_i sqrt(p_i q_i)), cosine clamped to [0, 1].
double fr_geodesic_distance(const ProbabilityVector& p, const ProbabilityVector& q);

/// Plain Euclidean distance on the flat simplex.
double flat_distance(const ProbabilityVector& p, const ProbabilityVector& q);

ProbabilityVector apply_stochastic(const StochasticMatrix& t, const ProbabilityVector& p);

/// Stochastic matrix whose columns are independent flat Dirichlet draws.
StochasticMatrix sample_stochastic_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);

enum class SimplexDistance { fisher_rao, flat };

struct MonotonicityReport {
  int trials = 0;
  int violations = 0;
  /// Largest D(TP,TQ) - D(P,Q) observed (may be negative).
  double max_excess = 0.0;
};

/// Samples random (T, P, Q) with N, M in {2..5} and counts contractions
/// violated by more than 1e-9.
MonotonicityReport monotonicity_stress(std::uint64_t seed, int trials,
                                       SimplexDistance distance = SimplexDistance::fisher_rao);

struct EllipseReport {
  RMatrix empirical_cov;
  RMatrix predicted_cov;
  double max_rel_err = 0.0;
};

/// Repeats `trials` rounds of `samples` multinomial draws from p and compares
/// the covariance of the frequency vectors against (delta_ij p_i - p_i p_j)/samples.
EllipseReport multinomial_ellipse_experiment(const ProbabilityVector& p, long samples, int trials,
                                             std::uint64_t seed);

/// Jeffreys prior: Dirichlet(1/2, ..., 1/2) density with respect to
/// Lebesgue measure on the first N-1 coordinates.
double jeffreys_density(const ProbabilityVector& p);

}  // namespace geostat
