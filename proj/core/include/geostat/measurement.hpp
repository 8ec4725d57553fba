#pragma once

#include <random>
#include <vector>

#include "geostat/classical.hpp"
#include "geostat/density_matrix.hpp"

namespace geostat {

/// Positive operator valued measure: PSD elements (lambda_min >= -1e-12)
/// summing to the identity within 1e-10.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> elements);

  /// Rank-one projectors onto the columns of a unitary.
  static Povm projective(const CMatrix& basis);

  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const { return elements_.front().dim(); }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

 private:
  std::vector<HermitianMatrix> elements_;
};

/// p_i = Tr(E_i rho).
ProbabilityVector induced_distribution(const Povm& e, const DensityMatrix& rho);

/// Fisher-Rao distance between the outcome distributions of E on rho1, rho2.
double povm_classical_angle(const Povm& e, const DensityMatrix& rho1, const DensityMatrix& rho2);

/// M = rho1^{-1/2} sqrt(sqrt(rho1) rho2 sqrt(rho1)) rho1^{-1/2}; PSD, with
/// rho2 = M rho1 M. Throws SingularError unless rho1 is invertible.
HermitianMatrix fuchs_caves_operator(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Projective measurement onto the eigenspaces of M. Eigenvalues closer
/// than 1e-8 (relative to the largest) share one projector.
Povm optimal_measurement(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Rank-one POVM from the rows of a Haar isometry C^n -> C^outcomes.
Povm sample_povm(std::mt19937_64& rng, Eigen::Index n, Eigen::Index outcomes);

struct QubitSearchReport {
  double best_angle = 0.0;
  Eigen::Vector3d best_axis = Eigen::Vector3d::UnitZ();
  /// Distinct axes (beyond the grid resolution) reach best_angle within 1e-9.
  bool non_unique = false;
  int evaluations = 0;
};

/// Classical angle of the projective qubit measurement along the Bloch axis n.
double qubit_axis_angle(const DensityMatrix& rho1, const DensityMatrix& rho2, const Eigen::Vector3d& axis);

/// Brute-force maximization of the classical angle over projective qubit
/// measurements: a (theta, phi) grid over the upper hemisphere of axes with
/// angular step pi/grid_resolution, then refine_iters rounds of pattern
/// search around the best grid axis.
QubitSearchReport qubit_povm_search(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    int grid_resolution = 200, int refine_iters = 60);

enum class DiameterSide { inside, outside };

/// Classical angle seen by a projective measurement on two pure qubit states
/// whose Bloch vectors subtend the angle theta (so their Fubini-Study
/// distance is theta/2). The measurement diameter makes Bloch angle theta_a
/// with the closest state and either crosses the arc between the states
/// (inside: theta/2 - theta_a) or not (outside: theta/2).
///
/// Throws DomainError unless 0 < theta < pi and theta_a fits the side:
/// theta_a <= theta/2 inside, theta_a <= (pi - theta)/2 outside.
double pure_state_qubit_angle(double theta, double theta_a, DiameterSide side);

}  // namespace geostat
