#include "geostat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geostat/errors.hpp"

namespace geostat {

namespace {

void require_square(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("shape mismatch: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  require_square(m);
  m_ = (m + m.adjoint()) * 0.5;
  // Averaging can leave -0.0 imaginary parts on the diagonal; zero them.
  for (Eigen::Index i = 0; i < m_.rows(); ++i) m_(i, i) = Complex(m_(i, i).real(), 0.0);
}

HermitianMatrix::HermitianMatrix(const RMatrix& m) : HermitianMatrix(CMatrix(m.cast<Complex>())) {}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(CMatrix(CMatrix::Identity(n, n)));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  return HermitianMatrix(CMatrix(d.cast<Complex>().asDiagonal()));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_shape(m_, o.m_);
  return HermitianMatrix(CMatrix(m_ + o.m_));
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_shape(m_, o.m_);
  return HermitianMatrix(CMatrix(m_ - o.m_));
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(CMatrix(m_ * s)); }

HermitianMatrix HermitianMatrix::conjugated(const CMatrix& u) const {
  if (u.cols() != m_.rows()) throw DimensionMismatch("conjugation by matrix of wrong width");
  return HermitianMatrix(CMatrix(u * m_ * u.adjoint()));
}

CMatrix EigenSystem::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

void fix_phase(Eigen::Ref<CVector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  const Complex phase = std::conj(v(best)) / best_abs;
  v *= phase;
  v(best) = Complex(v(best).real(), 0.0);
}

EigenSystem eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < es.vectors.cols(); ++k) fix_phase(es.vectors.col(k));
  return es;
}

HermitianMatrix matrix_function(const EigenSystem& es, const std::function<double(double)>& f,
                                double domain_floor) {
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  RVector fw(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    double w = es.values(i);
    if (w < domain_floor) {
      if (w < domain_floor - 1e-12 * scale) {
        throw DomainError("eigenvalue " + std::to_string(w) + " below domain floor " +
                          std::to_string(domain_floor));
      }
      w = domain_floor;
    }
    fw(i) = f(w);
    if (!std::isfinite(fw(i))) {
      throw DomainError("matrix function not finite at eigenvalue " + std::to_string(w));
    }
  }
  return HermitianMatrix(CMatrix(es.vectors * fw.cast<Complex>().asDiagonal() * es.vectors.adjoint()));
}

HermitianMatrix matrix_function(const HermitianMatrix& h, const std::function<double(double)>& f,
                                double domain_floor) {
  return matrix_function(eig(h), f, domain_floor);
}

HermitianMatrix sqrtm(const HermitianMatrix& h) {
  return matrix_function(h, [](double x) { return std::sqrt(x); }, 0.0);
}

HermitianMatrix inv_sqrtm(const HermitianMatrix& h) {
  const EigenSystem es = eig(h);
  if (es.values.size() > 0 && !(es.values(0) > 0.0)) {
    throw SingularError("inverse square root of a non-positive-definite matrix");
  }
  return matrix_function(es, [](double x) { return 1.0 / std::sqrt(x); });
}

HermitianMatrix inverse(const HermitianMatrix& h) {
  const EigenSystem es = eig(h);
  const double scale = es.values.cwiseAbs().maxCoeff();
  if (es.values.cwiseAbs().minCoeff() <= 1e-14 * scale) throw SingularError("matrix is singular");
  return matrix_function(es, [](double x) { return 1.0 / x; });
}

double min_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool psd_order_geq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("psd_order_geq: dimension mismatch");
  return min_eigenvalue(a - b) >= -tol;
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b);
  // Tr(B A^dagger) = sum_ij B_ij conj(A_ij)
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const CMatrix& a) { return a.norm(); }

double relative_hs_error(const CMatrix& a, const CMatrix& b, double floor) {
  require_same_shape(a, b);
  return (a - b).norm() / std::max(b.norm(), floor);
}

}  // namespace geostat
