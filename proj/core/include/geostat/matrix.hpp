#pragma once

#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace geostat {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Complex Hermitian matrix. Construction symmetrizes the input as
/// (H + H^dagger)/2, so the stored entries are exactly Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);
  explicit HermitianMatrix(const RMatrix& m);

  static HermitianMatrix identity(Eigen::Index n);
  static HermitianMatrix diagonal(const RVector& d);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

  /// U H U^dagger for any square U of matching size.
  HermitianMatrix conjugated(const CMatrix& u) const;

 private:
  CMatrix m_;
};

/// Eigendecomposition H = V diag(values) V^dagger with ascending values.
/// Each eigenvector is phase-fixed so that its component of largest modulus
/// (first one on ties) is real and positive.
struct EigenSystem {
  RVector values;
  CMatrix vectors;

  CMatrix reconstruct() const;
};

EigenSystem eig(const HermitianMatrix& h);

/// Rotates v so that its largest-modulus entry is real positive.
void fix_phase(Eigen::Ref<CVector> v);

/// V f(diag(w)) V^dagger. Eigenvalues below domain_floor by more than
/// 1e-12 (scaled by max(1, |w|_inf)) raise DomainError; eigenvalues inside
/// that slack are clamped to domain_floor before f is applied.
HermitianMatrix matrix_function(const HermitianMatrix& h,
                                const std::function<double(double)>& f,
                                double domain_floor = -std::numeric_limits<double>::infinity());
HermitianMatrix matrix_function(const EigenSystem& es,
                                const std::function<double(double)>& f,
                                double domain_floor = -std::numeric_limits<double>::infinity());

HermitianMatrix sqrtm(const HermitianMatrix& h);
/// Requires strictly positive spectrum; throws SingularError otherwise.
HermitianMatrix inv_sqrtm(const HermitianMatrix& h);
HermitianMatrix inverse(const HermitianMatrix& h);

double min_eigenvalue(const HermitianMatrix& h);

/// True iff lambda_min(A - B) >= -tol.
bool psd_order_geq(const HermitianMatrix& a, const HermitianMatrix& b, double tol = kDefaultTol);

/// <A|B> = Tr(B A^dagger).
Complex hs_inner(const CMatrix& a, const CMatrix& b);
double hs_norm(const CMatrix& a);

/// ||A - B||_HS / max(||B||_HS, floor); handy for relative comparisons.
double relative_hs_error(const CMatrix& a, const CMatrix& b, double floor = 1e-300);

}  // namespace geostat
