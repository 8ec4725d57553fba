#include "geostat/monotone_metrics.hpp"

#include <cmath>
#include <utility>

#include "geostat/errors.hpp"
#include "geostat/random.hpp"

namespace geostat {

double monotone_ds2(const DensityMatrix& rho, const TangentPerturbation& drho, const MonotoneFunction& f) {
  if (rho.dim() != drho.dim()) throw DimensionMismatch("monotone_ds2: dimension mismatch");
  const EigenSystem es = eig(rho.hermitian());
  if (!(es.values(0) > 1e-10)) {
    throw BoundaryError("monotone metric evaluated at a singular density matrix");
  }
  const RVector& l = es.values;
  const CMatrix ds = es.vectors.adjoint() * drho.matrix() * es.vectors;
  const Eigen::Index n = rho.dim();

  double diag = 0.0;
  double off = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    diag += std::norm(ds(i, i)) / l(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      off += std::norm(ds(i, j)) / (l(j) * f(l(i) / l(j)));
    }
  }
  return 0.25 * (diag + 2.0 * off);
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DomainError("channel needs at least one Kraus operator");
  const Eigen::Index in = kraus_.front().cols();
  const Eigen::Index out = kraus_.front().rows();
  CMatrix sum = CMatrix::Zero(in, in);
  for (const CMatrix& k : kraus_) {
    if (k.cols() != in || k.rows() != out) throw DimensionMismatch("Kraus operators differ in shape");
    sum += k.adjoint() * k;
  }
  if ((sum - CMatrix::Identity(in, in)).norm() > 1e-10) {
    throw DomainError("Kraus operators are not trace preserving");
  }
}

CMatrix KrausChannel::apply(const CMatrix& x) const {
  CMatrix y = CMatrix::Zero(output_dim(), output_dim());
  for (const CMatrix& k : kraus_) y += k * x * k.adjoint();
  return y;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix::normalized(HermitianMatrix(apply(rho.matrix())));
}

TangentPerturbation KrausChannel::apply(const TangentPerturbation& drho) const {
  return TangentPerturbation(HermitianMatrix(apply(drho.matrix())));
}

KrausChannel sample_channel(Rng& rng, Eigen::Index n, Eigen::Index env_dim) {
  const CMatrix v = sample_haar_isometry(rng, n * env_dim, n);
  std::vector<CMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(env_dim));
  for (Eigen::Index e = 0; e < env_dim; ++e) kraus.emplace_back(v.middleRows(e * n, n));
  return KrausChannel(std::move(kraus));
}

FConditionsReport f_conditions_check(const MonotoneFunction& f, std::uint64_t seed, int trials_per_dim) {
  FConditionsReport r;
  r.operator_monotone = true;
  for (Eigen::Index dim = 2; dim <= 4; ++dim) {
    const auto rep = operator_monotone_test(f.function(), dim, derive_seed(seed, "f-conditions", dim),
                                            trials_per_dim);
    if (rep.counterexample) {
      r.operator_monotone = false;
      r.counterexample_dim = dim;
      break;
    }
  }
  r.symmetry_defect = f.symmetry_defect();
  r.symmetric = r.symmetry_defect <= 1e-10;
  r.f_at_one = f(1.0);
  r.normalized = std::abs(r.f_at_one - 1.0) <= 1e-12;
  r.boundary_divergent = std::abs(f(0.0)) <= 1e-12;
  return r;
}

}  // namespace geostat
