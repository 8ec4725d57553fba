#pragma once

#include "geostat/matrix.hpp"

namespace geostat {

/// Hermitian, positive semidefinite (lambda_min >= -1e-12), unit trace
/// (within 1e-12; the stored matrix is renormalized to exact unit trace).
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianMatrix& h);
  explicit DensityMatrix(const CMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  /// Rescales a PSD matrix to unit trace before validation.
  static DensityMatrix normalized(const HermitianMatrix& h);
  static DensityMatrix maximally_mixed(Eigen::Index n);
  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix diagonal(const RVector& lambda);
  /// Qubit state (1/2)[[1+z, x-iy], [x+iy, 1-z]].
  static DensityMatrix bloch(double x, double y, double z);

  Eigen::Index dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }

  double min_eigenvalue() const;
  /// lambda_min > threshold.
  bool strictly_positive(double threshold = 1e-10) const { return min_eigenvalue() > threshold; }

 private:
  HermitianMatrix h_;
};

/// Hermitian traceless displacement (trace within 1e-12; the stored matrix
/// has the residual trace removed).
class TangentPerturbation {
 public:
  explicit TangentPerturbation(const HermitianMatrix& h);
  explicit TangentPerturbation(const CMatrix& m) : TangentPerturbation(HermitianMatrix(m)) {}

  Eigen::Index dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }

 private:
  HermitianMatrix h_;
};

/// Bloch vector (x, y, z) of a qubit state.
Eigen::Vector3d bloch_vector(const DensityMatrix& rho);

}  // namespace geostat
