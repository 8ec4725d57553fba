#include "geostat/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "geostat/errors.hpp"
#include "geostat/random.hpp"

namespace geostat {

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw DomainError("POVM has no elements");
  const Eigen::Index n = elements_.front().dim();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const HermitianMatrix& e : elements_) {
    if (e.dim() != n) throw DimensionMismatch("POVM elements differ in dimension");
    if (min_eigenvalue(e) < -1e-12) throw DomainError("POVM element is not positive semidefinite");
    sum += e.matrix();
  }
  if ((sum - CMatrix::Identity(n, n)).norm() > 1e-10) {
    throw DomainError("POVM elements do not resolve the identity");
  }
}

Povm Povm::projective(const CMatrix& basis) {
  std::vector<HermitianMatrix> elements;
  elements.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    elements.emplace_back(CMatrix(basis.col(k) * basis.col(k).adjoint()));
  }
  return Povm(std::move(elements));
}

ProbabilityVector induced_distribution(const Povm& e, const DensityMatrix& rho) {
  if (e.dim() != rho.dim()) throw DimensionMismatch("induced_distribution: dimension mismatch");
  RVector p(static_cast<Eigen::Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    // Tr(E rho) = <E|rho> for Hermitian E.
    p(static_cast<Eigen::Index>(i)) = hs_inner(e.elements()[i].matrix(), rho.matrix()).real();
  }
  return ProbabilityVector(p);
}

double povm_classical_angle(const Povm& e, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionMismatch("povm_classical_angle: dimension mismatch");
  return fr_geodesic_distance(induced_distribution(e, rho1), induced_distribution(e, rho2));
}

HermitianMatrix fuchs_caves_operator(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionMismatch("fuchs_caves_operator: dimension mismatch");
  const EigenSystem e1 = eig(rho1.hermitian());
  if (!(e1.values(0) > 1e-14)) throw SingularError("Fuchs-Caves operator needs an invertible first state");
  const HermitianMatrix root = matrix_function(e1, [](double x) { return std::sqrt(x); });
  const HermitianMatrix inv_root = matrix_function(e1, [](double x) { return 1.0 / std::sqrt(x); });
  const HermitianMatrix middle = sqrtm(rho2.hermitian().conjugated(root.matrix()));
  return middle.conjugated(inv_root.matrix());
}

Povm optimal_measurement(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const EigenSystem es = eig(fuchs_caves_operator(rho1, rho2));
  const Eigen::Index n = es.values.size();
  const double scale = std::max(es.values.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<HermitianMatrix> elements;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && es.values(stop) - es.values(stop - 1) <= 1e-8 * scale) ++stop;
    const auto block = es.vectors.middleCols(start, stop - start);
    elements.emplace_back(CMatrix(block * block.adjoint()));
    start = stop;
  }
  return Povm(std::move(elements));
}

Povm sample_povm(Rng& rng, Eigen::Index n, Eigen::Index outcomes) {
  if (outcomes < n) throw DomainError("a rank-one POVM needs at least n outcomes");
  const CMatrix v = sample_haar_isometry(rng, outcomes, n);
  std::vector<HermitianMatrix> elements;
  elements.reserve(static_cast<std::size_t>(outcomes));
  for (Eigen::Index k = 0; k < outcomes; ++k) {
    const CMatrix row = v.row(k);
    elements.emplace_back(CMatrix(row.adjoint() * row));
  }
  return Povm(std::move(elements));
}

double qubit_axis_angle(const DensityMatrix& rho1, const DensityMatrix& rho2, const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = axis.normalized();
  const double a = std::clamp(n.dot(bloch_vector(rho1)), -1.0, 1.0);
  const double b = std::clamp(n.dot(bloch_vector(rho2)), -1.0, 1.0);
  const double c = 0.5 * (std::sqrt((1 + a) * (1 + b)) + std::sqrt((1 - a) * (1 - b)));
  return std::acos(std::clamp(c, 0.0, 1.0));
}

namespace {

Eigen::Vector3d axis_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double axis_separation(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  // Axes are lines through the origin: n and -n are the same measurement.
  return std::acos(std::clamp(std::abs(u.dot(v)), 0.0, 1.0));
}

}  // namespace

QubitSearchReport qubit_povm_search(const DensityMatrix& rho1, const DensityMatrix& rho2, int grid_resolution,
                                    int refine_iters) {
  if (rho1.dim() != 2 || rho2.dim() != 2) throw DimensionMismatch("qubit_povm_search needs qubit states");
  if (grid_resolution < 2) throw DomainError("grid resolution must be at least 2");

  QubitSearchReport report;
  const double step = std::numbers::pi / grid_resolution;
  const int n_theta = grid_resolution / 2 + 1;  // theta in [0, pi/2]
  const int n_phi = 2 * grid_resolution;        // phi in [0, 2 pi)

  std::vector<std::pair<Eigen::Vector3d, double>> samples;
  samples.reserve(static_cast<std::size_t>(n_theta * n_phi));
  double best = -1.0;
  Eigen::Vector3d best_axis = Eigen::Vector3d::UnitZ();
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::min(i * step, 0.5 * std::numbers::pi);
    const int phis = (i == 0) ? 1 : n_phi;
    for (int j = 0; j < phis; ++j) {
      const Eigen::Vector3d axis = axis_from_angles(theta, j * step);
      const double angle = qubit_axis_angle(rho1, rho2, axis);
      samples.emplace_back(axis, angle);
      if (angle > best) {
        best = angle;
        best_axis = axis;
      }
    }
  }
  report.evaluations = static_cast<int>(samples.size());

  // Pattern search in the tangent plane of the current axis.
  double h = step;
  for (int it = 0; it < refine_iters; ++it) {
    Eigen::Vector3d t1 = best_axis.unitOrthogonal();
    Eigen::Vector3d t2 = best_axis.cross(t1);
    bool improved = false;
    for (const auto& [du, dv] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                                 {1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
      const Eigen::Vector3d cand = (best_axis + h * (du * t1 + dv * t2)).normalized();
      const double angle = qubit_axis_angle(rho1, rho2, cand);
      ++report.evaluations;
      if (angle > best) {
        best = angle;
        best_axis = cand;
        improved = true;
      }
    }
    if (!improved) h *= 0.5;
  }

  if (best_axis.z() < 0) best_axis = -best_axis;
  report.best_angle = best;
  report.best_axis = best_axis;
  for (const auto& [axis, angle] : samples) {
    if (angle >= best - 1e-9 && axis_separation(axis, best_axis) > 2.0 * step) {
      report.non_unique = true;
      break;
    }
  }
  return report;
}

double pure_state_qubit_angle(double theta, double theta_a, DiameterSide side) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DomainError("pure_state_qubit_angle: theta must lie in (0, pi)");
  }
  if (!(theta_a >= 0.0 && theta_a <= 0.5 * std::numbers::pi)) {
    throw DomainError("pure_state_qubit_angle: theta_a must lie in [0, pi/2]");
  }
  constexpr double kSlack = 1e-12;
  if (side == DiameterSide::inside) {
    if (theta_a > 0.5 * theta + kSlack) {
      throw DomainError("a diameter inside the arc is at most theta/2 from the closest state");
    }
    return 0.5 * theta - theta_a;
  }
  if (theta_a > 0.5 * (std::numbers::pi - theta) + kSlack) {
    throw DomainError("a diameter outside the arc is at most (pi - theta)/2 from the closest state");
  }
  return 0.5 * theta;
}

}  // namespace geostat
