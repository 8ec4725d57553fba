#include "geostat/bures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "geostat/errors.hpp"
#include "geostat/monotone_metrics.hpp"

namespace geostat {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

/// sqrt(sqrt(rho1) rho2 sqrt(rho1)) together with rho1^{+-1/2}.
struct LiftPieces {
  HermitianMatrix inv_root;
  HermitianMatrix middle;
};

LiftPieces lift_pieces(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const EigenSystem e1 = eig(rho1.hermitian());
  if (!(e1.values(0) > 1e-14)) throw SingularError("first state is not invertible");
  const HermitianMatrix root = matrix_function(e1, [](double x) { return std::sqrt(x); });
  const HermitianMatrix inv_root = matrix_function(e1, [](double x) { return 1.0 / std::sqrt(x); });
  const HermitianMatrix inner = rho2.hermitian().conjugated(root.matrix());
  return {inv_root, matrix_function(inner, [](double x) { return std::sqrt(x); }, 0.0)};
}

}  // namespace

Purification::Purification(const CMatrix& a) : a_(a) {
  if (a_.rows() != a_.cols()) throw DimensionMismatch("purification must be square");
  const double n2 = a_.squaredNorm();
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw DomainError("purification has Tr AA^dagger = " + std::to_string(n2) + ", expected 1");
  }
}

Purification Purification::normalize(const CMatrix& a) {
  const double n = a.norm();
  if (!(n > 0.0)) throw ZeroVectorError("cannot normalize a zero purification");
  return Purification(CMatrix(a / n));
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2, "fidelity");
  // Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)) is the trace norm of sqrt(rho1) sqrt(rho2).
  const CMatrix product = sqrtm(rho1.hermitian()).matrix() * sqrtm(rho2.hermitian()).matrix();
  const double s = Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

double bures_angle(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return std::acos(std::clamp(std::sqrt(fidelity(rho1, rho2)), 0.0, 1.0));
}

Purification purify(const DensityMatrix& rho) {
  return Purification::normalize(sqrtm(rho.hermitian()).matrix());
}

DensityMatrix project(const Purification& a) {
  return DensityMatrix::normalized(HermitianMatrix(CMatrix(a.matrix() * a.matrix().adjoint())));
}

Purification horizontal_lift(const DensityMatrix& rho1, const DensityMatrix& rho2, const Purification& a1) {
  require_same_dim(rho1, rho2, "horizontal_lift");
  if (a1.dim() != rho1.dim()) throw DimensionMismatch("horizontal_lift: purification dimension");
  if ((a1.matrix() * a1.matrix().adjoint() - rho1.matrix()).norm() > 1e-8) {
    throw DomainError("horizontal_lift: A1 does not purify rho1");
  }
  const LiftPieces pieces = lift_pieces(rho1, rho2);
  const CMatrix m = pieces.inv_root.matrix() * pieces.middle.matrix() * pieces.inv_root.matrix();
  return Purification::normalize(m * a1.matrix());
}

GeodesicPath::GeodesicPath(Purification start, const CMatrix& orthogonal, double t_star)
    : a1_(std::move(start)), a2_(orthogonal), t_star_(t_star) {
  if (a2_.rows() != a1_.dim() || a2_.cols() != a1_.dim()) {
    throw DimensionMismatch("geodesic plane matrices differ in shape");
  }
}

CMatrix GeodesicPath::purification_at(double t) const {
  return std::cos(t) * a1_.matrix() + std::sin(t) * a2_;
}

CMatrix GeodesicPath::purification_velocity(double t) const {
  return -std::sin(t) * a1_.matrix() + std::cos(t) * a2_;
}

HermitianMatrix GeodesicPath::at(double t) const {
  const CMatrix a = purification_at(t);
  return HermitianMatrix(CMatrix(a * a.adjoint()));
}

HermitianMatrix GeodesicPath::velocity(double t) const {
  const CMatrix a = purification_at(t);
  const CMatrix da = purification_velocity(t);
  return HermitianMatrix(CMatrix(da * a.adjoint() + a * da.adjoint()));
}

GeodesicPath geodesic(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_same_dim(rho1, rho2, "geodesic");
  if (!rho1.strictly_positive() || !rho2.strictly_positive()) {
    throw SingularError("geodesic endpoints must be invertible");
  }
  const Purification a1 = purify(rho1);
  const Purification a2 = horizontal_lift(rho1, rho2, a1);
  // <A1|A2> is real and equals sqrt(F) for the horizontal lift.
  const double c = std::clamp(hs_inner(a1.matrix(), a2.matrix()).real(), -1.0, 1.0);
  const CMatrix residual = a2.matrix() - c * a1.matrix();
  const double s = residual.norm();
  if (s < 1e-12) throw DegenerateError("geodesic endpoints coincide");
  return GeodesicPath(a1, residual / s, std::atan2(s, c));
}

double bures_length(const GeodesicPath& path, double t0, double t1, int panels) {
  // 5-point Gauss-Legendre nodes on [-1, 1].
  static constexpr std::array<double, 5> kNodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                   -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {0.5688888888888889, 0.4786286704993665,
                                                     0.4786286704993665, 0.2369268850561891,
                                                     0.2369268850561891};
  const MonotoneFunction arithmetic = MonotoneFunction::arithmetic();
  const double h = (t1 - t0) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = t0 + (p + 0.5) * h;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      const double t = mid + 0.5 * h * kNodes[k];
      const DensityMatrix rho = DensityMatrix::normalized(path.at(t));
      const HermitianMatrix v = path.velocity(t);
      const TangentPerturbation drho(v - HermitianMatrix::identity(v.dim()) * (v.trace() / v.dim()));
      total += kWeights[k] * 0.5 * h * std::sqrt(monotone_ds2(rho, drho, arithmetic));
    }
  }
  return total;
}

double fubini_study_distance(const CVector& psi, const CVector& phi) {
  if (psi.size() != phi.size()) throw DimensionMismatch("fubini_study_distance: length mismatch");
  const double np = psi.norm();
  const double nq = phi.norm();
  if (!(np > 0.0) || !(nq > 0.0)) throw ZeroVectorError("Fubini-Study distance of a zero vector");
  const double c = std::abs(psi.dot(phi)) / (np * nq);
  return std::acos(std::clamp(c, 0.0, 1.0));
}

double qubit_bures_ds2(const Eigen::Vector3d& r, const Eigen::Vector3d& dr) {
  const double one_minus_r2 = 1.0 - r.squaredNorm();
  if (!(one_minus_r2 > 0.0)) throw BoundaryError("qubit Bures metric diverges on the Bloch sphere");
  const double radial = r.dot(dr);
  return 0.25 * (dr.squaredNorm() + radial * radial / one_minus_r2);
}

}  // namespace geostat
