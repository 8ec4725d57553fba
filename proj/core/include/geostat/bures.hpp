#pragma once

#include "geostat/density_matrix.hpp"

namespace geostat {

/// Square complex matrix A with Tr(A A^dagger) = 1 (within 1e-12), i.e. a
/// point on the unit sphere of Hilbert-Schmidt space.
class Purification {
 public:
  explicit Purification(const CMatrix& a);
  /// Rescales A onto the unit sphere.
  static Purification normalize(const CMatrix& a);

  Eigen::Index dim() const { return a_.rows(); }
  const CMatrix& matrix() const { return a_; }

 private:
  CMatrix a_;
};

/// F = (Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)))^2, in [0, 1].
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// arccos(sqrt(F)), in [0, pi/2].
double bures_angle(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Canonical purification A = sqrt(rho).
Purification purify(const DensityMatrix& rho);

/// A A^dagger.
DensityMatrix project(const Purification& a);

/// A2 = rho1^{-1/2} sqrt(sqrt(rho1) rho2 sqrt(rho1)) rho1^{-1/2} A1, the
/// purification of rho2 closest to A1. Requires rho1 strictly positive.
Purification horizontal_lift(const DensityMatrix& rho1, const DensityMatrix& rho2, const Purification& a1);

/// Bures geodesic as the projection of a great circle of the HS unit sphere:
///
///   rho(t) = A(t) A(t)^dagger,   A(t) = cos(t) A1 + sin(t) A2perp
///
/// with (A1, A2perp) orthonormal in the real inner product Re<.|.>. The
/// parameter is Bures arc length; rho(0) = rho1 and rho(t_star) = rho2. The
/// great circle has period 2 pi and covers the geodesic twice (rho(t + pi) =
/// rho(t)).
class GeodesicPath {
 public:
  GeodesicPath(Purification start, const CMatrix& orthogonal, double t_star);

  const Purification& start() const { return a1_; }
  const CMatrix& orthogonal() const { return a2_; }
  double t_star() const { return t_star_; }
  Eigen::Index dim() const { return a1_.dim(); }

  CMatrix purification_at(double t) const;
  /// d/dt of purification_at.
  CMatrix purification_velocity(double t) const;
  /// Hermitian, unit trace, PSD up to rounding (not validated; may touch the
  /// boundary).
  HermitianMatrix at(double t) const;
  /// d rho / dt.
  HermitianMatrix velocity(double t) const;

 private:
  Purification a1_;
  CMatrix a2_;
  double t_star_;
};

/// Requires both states strictly positive (SingularError) and distinct
/// (DegenerateError).
GeodesicPath geodesic(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Bures length of the path between t0 and t1, by composite Gauss-Legendre
/// quadrature of sqrt(monotone_ds2(rho(t), rho'(t), arithmetic)).
double bures_length(const GeodesicPath& path, double t0, double t1, int panels = 32);

/// arccos(|<psi|phi>| / (|psi| |phi|)), in [0, pi/2].
double fubini_study_distance(const CVector& psi, const CVector& phi);

/// Closed-form Bures line element for a qubit in Bloch coordinates:
/// 1/4 [dx^2 + dy^2 + dz^2 + (x dx + y dy + z dz)^2 / (1 - r^2)].
/// Throws BoundaryError for r >= 1.
double qubit_bures_ds2(const Eigen::Vector3d& r, const Eigen::Vector3d& dr);

}  // namespace geostat
