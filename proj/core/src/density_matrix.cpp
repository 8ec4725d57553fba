#include "geostat/density_matrix.hpp"

#include <cmath>
#include <string>

#include "geostat/errors.hpp"

namespace geostat {

DensityMatrix::DensityMatrix(const HermitianMatrix& h) {
  if (h.dim() == 0) throw DomainError("empty density matrix");
  const double tr = h.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw DomainError("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  const double lam = geostat::min_eigenvalue(h);
  if (lam < -1e-12) {
    throw DomainError("density matrix has negative eigenvalue " + std::to_string(lam));
  }
  h_ = h * (1.0 / tr);
}

DensityMatrix DensityMatrix::normalized(const HermitianMatrix& h) {
  const double tr = h.trace();
  if (!(tr > 0.0)) throw DomainError("cannot normalize a matrix with non-positive trace");
  return DensityMatrix(h * (1.0 / tr));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index n) {
  return DensityMatrix(HermitianMatrix::identity(n) * (1.0 / static_cast<double>(n)));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double nrm2 = psi.squaredNorm();
  if (!(nrm2 > 0.0)) throw ZeroVectorError("pure state from zero vector");
  return DensityMatrix(HermitianMatrix(CMatrix(psi * psi.adjoint() / nrm2)));
}

DensityMatrix DensityMatrix::diagonal(const RVector& lambda) {
  return DensityMatrix(HermitianMatrix::diagonal(lambda));
}

DensityMatrix DensityMatrix::bloch(double x, double y, double z) {
  CMatrix m(2, 2);
  m << Complex(1 + z, 0), Complex(x, -y),
       Complex(x, y), Complex(1 - z, 0);
  return DensityMatrix(HermitianMatrix(CMatrix(0.5 * m)));
}

double DensityMatrix::min_eigenvalue() const { return geostat::min_eigenvalue(h_); }

TangentPerturbation::TangentPerturbation(const HermitianMatrix& h) {
  const double tr = h.trace();
  if (std::abs(tr) > 1e-12) throw DomainError("perturbation is not traceless");
  const Eigen::Index n = h.dim();
  h_ = h - HermitianMatrix::identity(n) * (tr / static_cast<double>(n));
}

Eigen::Vector3d bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch("bloch_vector needs a qubit state");
  const CMatrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

}  // namespace geostat
