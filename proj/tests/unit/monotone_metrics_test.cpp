#include <cmath>

#include <gtest/gtest.h>

#include "geostat/classical.hpp"
#include "geostat/density_matrix.hpp"
#include "geostat/errors.hpp"
#include "geostat/monotone_metrics.hpp"
#include "geostat/random.hpp"
#include "test_util.hpp"

namespace geostat {
namespace {

using testing::cmat;
using testing::rvec;

std::vector<MonotoneFunction> named_means() {
  return {MonotoneFunction::arithmetic(), MonotoneFunction::geometric(), MonotoneFunction::harmonic()};
}

TangentPerturbation random_tangent(Rng& rng, Eigen::Index n) {
  HermitianMatrix h(sample_ginibre(rng, n, n));
  h = h - HermitianMatrix::identity(n) * (h.trace() / static_cast<double>(n));
  return TangentPerturbation(h * (1.0 / hs_norm(h.matrix())));
}

TangentPerturbation off_diagonal(double x) { return TangentPerturbation(cmat({{0, x}, {x, 0}})); }

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(cmat({{0.5, 0}, {0, 0.6}})), DomainError);
  EXPECT_THROW(DensityMatrix(cmat({{1.1, 0}, {0, -0.1}})), DomainError);
  EXPECT_NO_THROW(DensityMatrix::normalized(HermitianMatrix::identity(3)));
  EXPECT_THROW(TangentPerturbation(cmat({{0.1, 0}, {0, 0}})), DomainError);
  EXPECT_THROW(DensityMatrix::pure(CVector::Zero(2)), ZeroVectorError);
}

TEST(DensityMatrix, BlochRoundTrip) {
  const DensityMatrix rho = DensityMatrix::bloch(0.1, -0.2, 0.3);
  const Eigen::Vector3d r = bloch_vector(rho);
  EXPECT_NEAR(r.x(), 0.1, 1e-15);
  EXPECT_NEAR(r.y(), -0.2, 1e-15);
  EXPECT_NEAR(r.z(), 0.3, 1e-15);
}

TEST(MonotoneDs2, DiagonalPartIsFisherRao) {
  const double eps = 1e-3;
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  const TangentPerturbation d(HermitianMatrix::diagonal(rvec({eps, -eps})));
  for (const auto& f : named_means()) EXPECT_NEAR(monotone_ds2(rho, d, f), eps * eps, 1e-20) << f.name();
}

TEST(MonotoneDs2, OffDiagonalArithmetic) {
  // (1/4) * 2 * x^2 / (l2 f(l1/l2)) with l2 f(l1/l2) = (l1 + l2)/2.
  const double l1 = 0.3, l2 = 0.7, x = 0.01;
  EXPECT_NEAR(monotone_ds2(DensityMatrix::diagonal(rvec({l1, l2})), off_diagonal(x), MonotoneFunction::arithmetic()),
              x * x / (l1 + l2), 1e-18);
}

TEST(MonotoneDs2, OffDiagonalGeometricAndHarmonic) {
  const double l1 = 0.3, l2 = 0.7, x = 0.01;
  const DensityMatrix rho = DensityMatrix::diagonal(rvec({l1, l2}));
  EXPECT_NEAR(monotone_ds2(rho, off_diagonal(x), MonotoneFunction::geometric()), x * x / (2 * std::sqrt(l1 * l2)),
              1e-18);
  EXPECT_NEAR(monotone_ds2(rho, off_diagonal(x), MonotoneFunction::harmonic()), x * x * (l1 + l2) / (4 * l1 * l2),
              1e-18);
}

TEST(MonotoneDs2, ZeroPerturbation) {
  Rng rng = make_rng(61, "zero");
  const DensityMatrix rho(sample_density_hs(rng, 3));
  for (const auto& f : named_means()) {
    EXPECT_EQ(monotone_ds2(rho, TangentPerturbation(CMatrix::Zero(3, 3)), f), 0.0);
  }
}

TEST(MonotoneDs2, Errors) {
  const DensityMatrix pure = DensityMatrix::diagonal(rvec({1, 0}));
  EXPECT_THROW(monotone_ds2(pure, off_diagonal(0.1), MonotoneFunction::arithmetic()), BoundaryError);
  EXPECT_THROW(monotone_ds2(DensityMatrix::maximally_mixed(3), off_diagonal(0.1), MonotoneFunction::arithmetic()),
               DimensionMismatch);
}

TEST(MonotoneDs2, NearDegenerateSpectrumIsStable) {
  const double x = 0.02;
  const double exact = monotone_ds2(DensityMatrix::diagonal(rvec({0.5, 0.5})), off_diagonal(x),
                                    MonotoneFunction::geometric());
  const DensityMatrix near = DensityMatrix::diagonal(rvec({0.5 + 5e-9, 0.5 - 5e-9}));
  for (const auto& f : named_means()) {
    EXPECT_NEAR(monotone_ds2(near, off_diagonal(x), f), exact, 1e-12) << f.name();
  }
  // Rotated near-degenerate state, so the eigenbasis is arbitrary inside the
  // 1e-8 gap.
  Rng rng = make_rng(62, "near-degenerate");
  const CMatrix u = sample_haar_unitary(rng, 3);
  const DensityMatrix rho(HermitianMatrix::diagonal(rvec({0.4, 0.3 + 5e-9, 0.3 - 5e-9})).conjugated(u));
  const DensityMatrix rho0(HermitianMatrix::diagonal(rvec({0.4, 0.3, 0.3})).conjugated(u));
  const TangentPerturbation d = random_tangent(rng, 3);
  for (const auto& f : named_means()) {
    EXPECT_NEAR(monotone_ds2(rho, d, f), monotone_ds2(rho0, d, f), 1e-6) << f.name();
  }
}

TEST(MonotoneDs2Property, UnitaryInvariance) {
  for (int k = 0; k < 500; ++k) {
    Rng rng = make_rng(63, "unitary-invariance", k);
    const Eigen::Index n = sample_index(rng, 2, 5);
    const DensityMatrix rho(sample_density_hs(rng, n));
    const TangentPerturbation d = random_tangent(rng, n);
    const CMatrix u = sample_haar_unitary(rng, n);
    const DensityMatrix rho_u(rho.hermitian().conjugated(u));
    const TangentPerturbation d_u(d.hermitian().conjugated(u));
    for (const auto& f : named_means()) {
      const double a = monotone_ds2(rho, d, f), b = monotone_ds2(rho_u, d_u, f);
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, a)) << f.name();
    }
  }
}

TEST(MonotoneDs2Property, ClassicalReduction) {
  for (int k = 0; k < 500; ++k) {
    Rng rng = make_rng(64, "classical-reduction", k);
    const Eigen::Index n = sample_index(rng, 2, 6);
    const RVector lambda = sample_flat_dirichlet(rng, n);
    RVector dp = RVector::NullaryExpr(n, [&] { return sample_uniform(rng, -0.1, 0.1); });
    dp.array() -= dp.mean();
    const double fr = fisher_rao_ds2(ProbabilityVector(lambda), TangentVector(dp));
    for (const auto& f : named_means()) {
      EXPECT_NEAR(monotone_ds2(DensityMatrix::diagonal(lambda), TangentPerturbation(HermitianMatrix::diagonal(dp)), f),
                  fr, 1e-12 * std::max(1.0, fr));
    }
  }
}

TEST(MonotoneDs2Property, ContractsUnderChannels) {
  for (int k = 0; k < 500; ++k) {
    Rng rng = make_rng(65, "cptp-contraction", k);
    const Eigen::Index n = sample_index(rng, 2, 4);
    const DensityMatrix rho(sample_density_hs(rng, n));
    const TangentPerturbation d = random_tangent(rng, n);
    const KrausChannel phi = sample_channel(rng, n, n);
    const DensityMatrix out = phi.apply(rho);
    if (!out.strictly_positive(1e-8)) continue;
    for (const auto& f : named_means()) {
      EXPECT_LE(monotone_ds2(out, phi.apply(d), f), monotone_ds2(rho, d, f) + 1e-9) << f.name();
    }
  }
}

TEST(KrausChannel, ValidatesTracePreservation) {
  EXPECT_THROW(KrausChannel({CMatrix::Identity(2, 2) * 0.5}), DomainError);
  EXPECT_THROW(KrausChannel({}), DomainError);
  Rng rng = make_rng(66, "channel");
  const KrausChannel phi = sample_channel(rng, 3, 2);
  CMatrix sum = CMatrix::Zero(3, 3);
  for (const auto& k : phi.operators()) sum += k.adjoint() * k;
  EXPECT_MATRIX_NEAR(sum, CMatrix::Identity(3, 3), 1e-12);
  EXPECT_NEAR(phi.apply(DensityMatrix::maximally_mixed(3)).hermitian().trace(), 1.0, 1e-12);
}

TEST(FConditions, Arithmetic) {
  const FConditionsReport r = f_conditions_check(MonotoneFunction::arithmetic(), 67, 500);
  EXPECT_TRUE(r.all_pass());
  EXPECT_FALSE(r.boundary_divergent);
}

TEST(FConditions, HarmonicPassesAndDivergesOnBoundary) {
  const FConditionsReport r = f_conditions_check(MonotoneFunction::harmonic(), 67, 500);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.boundary_divergent);
  EXPECT_TRUE(f_conditions_check(MonotoneFunction::geometric(), 67, 500).boundary_divergent);
}

TEST(FConditions, SquareFailsOperatorMonotonicity) {
  const FConditionsReport r = f_conditions_check(MonotoneFunction::custom("square", [](double t) { return t * t; }), 67);
  EXPECT_FALSE(r.operator_monotone);
  EXPECT_GE(r.counterexample_dim, 2);
  EXPECT_FALSE(r.symmetric);
  EXPECT_TRUE(r.normalized);
}

}  // namespace
}  // namespace geostat
