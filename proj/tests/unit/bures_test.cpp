#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "geostat/bures.hpp"
#include "geostat/classical.hpp"
#include "geostat/errors.hpp"
#include "geostat/monotone_metrics.hpp"
#include "geostat/random.hpp"
#include "test_util.hpp"

namespace geostat {
namespace {

using testing::cmat;
using testing::rvec;
constexpr double kPi = std::numbers::pi;

DensityMatrix random_state(Rng& rng, Eigen::Index n) { return DensityMatrix(sample_density_hs(rng, n)); }

CVector ket(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

TEST(Fidelity, SelfFidelityIsOne) {
  Rng rng = make_rng(71, "self");
  const DensityMatrix rho = random_state(rng, 4);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-12);
}

TEST(Fidelity, CommutingMatchesClassicalOverlap) {
  const RVector l = rvec({0.1, 0.2, 0.7}), m = rvec({0.3, 0.3, 0.4});
  const double bc = (l.array() * m.array()).sqrt().sum();
  EXPECT_NEAR(fidelity(DensityMatrix::diagonal(l), DensityMatrix::diagonal(m)), bc * bc, 1e-14);
  const double fr = fr_geodesic_distance(ProbabilityVector(l), ProbabilityVector(m));
  EXPECT_NEAR(bures_angle(DensityMatrix::diagonal(l), DensityMatrix::diagonal(m)), fr, 1e-12);
}

TEST(Fidelity, PureStatesGiveSquaredOverlap) {
  Rng rng = make_rng(72, "pure");
  for (int k = 0; k < 50; ++k) {
    const CVector psi = sample_ginibre(rng, 3, 1).col(0).normalized();
    const CVector phi = sample_ginibre(rng, 3, 1).col(0).normalized();
    EXPECT_NEAR(fidelity(DensityMatrix::pure(psi), DensityMatrix::pure(phi)), std::norm(psi.dot(phi)), 1e-10);
  }
}

TEST(Fidelity, DimensionMismatch) {
  EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}

TEST(BuresAngle, Examples) {
  EXPECT_NEAR(bures_angle(DensityMatrix::maximally_mixed(2), DensityMatrix::diagonal(rvec({1, 0}))), kPi / 4, 1e-14);
  Rng rng = make_rng(73, "angle");
  const DensityMatrix rho = random_state(rng, 3);
  EXPECT_NEAR(bures_angle(rho, rho), 0.0, 1e-6);
  EXPECT_NEAR(bures_angle(DensityMatrix::diagonal(rvec({1, 0})), DensityMatrix::diagonal(rvec({0, 1}))), kPi / 2,
              1e-15);
}

TEST(FidelityProperty, SymmetryAndUnitaryInvariance) {
  for (int k = 0; k < 1000; ++k) {
    Rng rng = make_rng(74, "fidelity-props", k);
    const Eigen::Index n = sample_index(rng, 2, 6);
    const DensityMatrix r1 = random_state(rng, n), r2 = random_state(rng, n);
    const double f = fidelity(r1, r2);
    EXPECT_NEAR(f, fidelity(r2, r1), 1e-10);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    const CMatrix u = sample_haar_unitary(rng, n);
    EXPECT_NEAR(fidelity(DensityMatrix(r1.hermitian().conjugated(u)), DensityMatrix(r2.hermitian().conjugated(u))), f,
                1e-10);
  }
}

TEST(FidelityProperty, PureStateAgreementWithFubiniStudy) {
  for (int k = 0; k < 300; ++k) {
    Rng rng = make_rng(75, "pure-fs", k);
    const Eigen::Index n = sample_index(rng, 2, 5);
    const CVector psi = sample_ginibre(rng, n, 1).col(0), phi = sample_ginibre(rng, n, 1).col(0);
    EXPECT_NEAR(bures_angle(DensityMatrix::pure(psi), DensityMatrix::pure(phi)), fubini_study_distance(psi, phi), 1e-10);
  }
}

TEST(FidelityProperty, BuresAngleContractsUnderChannels) {
  for (int k = 0; k < 500; ++k) {
    Rng rng = make_rng(76, "bures-cptp", k);
    const Eigen::Index n = sample_index(rng, 2, 4);
    const DensityMatrix r1 = random_state(rng, n), r2 = random_state(rng, n);
    const KrausChannel phi = sample_channel(rng, n, sample_index(rng, 1, n));
    EXPECT_LE(bures_angle(phi.apply(r1), phi.apply(r2)), bures_angle(r1, r2) + 1e-9);
  }
}

TEST(Purification, Examples) {
  EXPECT_MATRIX_NEAR(purify(DensityMatrix::diagonal(rvec({1, 0}))).matrix(), cmat({{1, 0}, {0, 0}}), 1e-15);
  EXPECT_MATRIX_NEAR(purify(DensityMatrix::maximally_mixed(2)).matrix(), CMatrix::Identity(2, 2) / std::sqrt(2.0),
                     1e-15);
  Rng rng = make_rng(77, "roundtrip");
  const DensityMatrix rho = random_state(rng, 4);
  EXPECT_MATRIX_NEAR(project(purify(rho)).matrix(), rho.matrix(), 1e-10);
}

TEST(Purification, Validation) {
  EXPECT_THROW(Purification(CMatrix::Identity(2, 2)), DomainError);
  EXPECT_THROW(Purification::normalize(CMatrix::Zero(2, 2)), ZeroVectorError);
  EXPECT_NEAR(hs_norm(Purification::normalize(CMatrix::Identity(3, 3)).matrix()), 1.0, 1e-15);
}

TEST(PurificationProperty, GaugeInvariance) {
  for (int k = 0; k < 200; ++k) {
    Rng rng = make_rng(78, "gauge", k);
    const Eigen::Index n = sample_index(rng, 2, 6);
    const Purification a = Purification::normalize(sample_ginibre(rng, n, n));
    const CMatrix u = sample_haar_unitary(rng, n);
    EXPECT_MATRIX_NEAR(project(Purification(a.matrix() * u)).matrix(), project(a).matrix(), 1e-12);
  }
}

TEST(HorizontalLift, SameStateReturnsStart) {
  Rng rng = make_rng(79, "lift-same");
  const DensityMatrix rho = random_state(rng, 3);
  const Purification a = purify(rho);
  EXPECT_MATRIX_NEAR(horizontal_lift(rho, rho, a).matrix(), a.matrix(), 1e-10);
}

TEST(HorizontalLift, CommutingPairGivesSquareRoot) {
  const DensityMatrix r1 = DensityMatrix::diagonal(rvec({0.2, 0.3, 0.5}));
  const DensityMatrix r2 = DensityMatrix::diagonal(rvec({0.6, 0.1, 0.3}));
  const CMatrix expected = HermitianMatrix::diagonal(rvec({std::sqrt(0.6), std::sqrt(0.1), std::sqrt(0.3)})).matrix();
  EXPECT_MATRIX_NEAR(horizontal_lift(r1, r2, purify(r1)).matrix(), expected, 1e-14);
}

TEST(HorizontalLiftProperty, OverlapIsRootFidelityAndPositive) {
  for (int k = 0; k < 300; ++k) {
    Rng rng = make_rng(80, "lift", k);
    const Eigen::Index n = sample_index(rng, 2, 5);
    const DensityMatrix r1 = random_state(rng, n), r2 = random_state(rng, n);
    // Any purification of r1, not only the canonical one.
    const Purification a1(purify(r1).matrix() * sample_haar_unitary(rng, n));
    const Purification a2 = horizontal_lift(r1, r2, a1);
    EXPECT_MATRIX_NEAR(project(a2).matrix(), r2.matrix(), 1e-9);
    const CMatrix overlap = a1.matrix().adjoint() * a2.matrix();
    EXPECT_NEAR(std::abs(overlap.trace() - Complex(std::sqrt(fidelity(r1, r2)), 0)), 0.0, 1e-9);
    EXPECT_GE(min_eigenvalue(HermitianMatrix(overlap)), -1e-10);
    EXPECT_LE((overlap - overlap.adjoint()).norm(), 1e-9);
  }
}

TEST(HorizontalLift, Errors) {
  const DensityMatrix singular = DensityMatrix::diagonal(rvec({1, 0}));
  EXPECT_THROW(horizontal_lift(singular, DensityMatrix::maximally_mixed(2), purify(singular)), SingularError);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(horizontal_lift(mixed, mixed, purify(DensityMatrix::diagonal(rvec({0.9, 0.1})))), DomainError);
}

TEST(Geodesic, DiagonalQubitPathFollowsGreatCircle) {
  // x(t) on the unit circle starts at angle pi/4 and moves towards pi/6,
  // so rho(t) = diag(cos^2(pi/4 - t), sin^2(pi/4 - t)) and z(t) = sin(2t).
  const DensityMatrix r1 = DensityMatrix::maximally_mixed(2);
  const DensityMatrix r2 = DensityMatrix::diagonal(rvec({0.75, 0.25}));
  const GeodesicPath path = geodesic(r1, r2);
  EXPECT_NEAR(path.t_star(), kPi / 12, 1e-14);
  for (int s = 0; s <= 20; ++s) {
    const double t = path.t_star() * s / 20.0;
    const HermitianMatrix rho = path.at(t);
    EXPECT_NEAR(std::abs(rho(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR((rho(0, 0) - rho(1, 1)).real(), std::sin(2 * t), 1e-14);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-14);
  }
}

TEST(Geodesic, EndpointsMidpointAndOrthonormality) {
  for (int k = 0; k < 100; ++k) {
    Rng rng = make_rng(81, "geodesic", k);
    const Eigen::Index n = sample_index(rng, 2, 5);
    const DensityMatrix r1 = random_state(rng, n), r2 = random_state(rng, n);
    const GeodesicPath path = geodesic(r1, r2);
    EXPECT_NEAR(path.t_star(), bures_angle(r1, r2), 1e-9);
    EXPECT_MATRIX_NEAR(path.at(0.0).matrix(), r1.matrix(), 1e-12);
    EXPECT_MATRIX_NEAR(path.at(path.t_star()).matrix(), r2.matrix(), 1e-9);
    EXPECT_NEAR(hs_inner(path.start().matrix(), path.orthogonal()).real(), 0.0, 1e-10);
    EXPECT_NEAR(hs_norm(path.orthogonal()), 1.0, 1e-10);
    const DensityMatrix mid(path.at(0.5 * path.t_star()));
    EXPECT_NEAR(bures_angle(r1, mid), bures_angle(mid, r2), 1e-8);
    EXPECT_MATRIX_NEAR(path.at(1.0 + kPi).matrix(), path.at(1.0).matrix(), 1e-12);
  }
}

TEST(Geodesic, ArcLengthEqualsBuresAngle) {
  for (Eigen::Index n : {2, 3}) {
    for (int k = 0; k < 10; ++k) {
      Rng rng = make_rng(82, "arc-length", static_cast<std::uint64_t>(10 * n + k));
      const DensityMatrix r1 = random_state(rng, n), r2 = random_state(rng, n);
      const GeodesicPath path = geodesic(r1, r2);
      EXPECT_NEAR(bures_length(path, 0.0, path.t_star()), bures_angle(r1, r2), 1e-6) << "n = " << n;
    }
  }
}

TEST(Geodesic, VelocityMatchesFiniteDifference) {
  Rng rng = make_rng(83, "velocity");
  const GeodesicPath path = geodesic(random_state(rng, 3), random_state(rng, 3));
  const double t = 0.3, h = 1e-5;
  const CMatrix fd = (path.at(t + h).matrix() - path.at(t - h).matrix()) / (2 * h);
  EXPECT_MATRIX_NEAR(path.velocity(t).matrix(), fd, 1e-8);
}

TEST(Geodesic, Errors) {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(geodesic(mixed, mixed), DegenerateError);
  EXPECT_THROW(geodesic(DensityMatrix::diagonal(rvec({1, 0})), mixed), SingularError);
  EXPECT_THROW(geodesic(mixed, DensityMatrix::diagonal(rvec({1, 0}))), SingularError);
}

TEST(FubiniStudy, Examples) {
  const CVector psi = ket({Complex(0.6, 0.1), Complex(-0.2, 0.5)});
  EXPECT_NEAR(fubini_study_distance(psi, psi), 0.0, 1e-7);
  EXPECT_NEAR(fubini_study_distance(ket({1, 0}), ket({0, 1})), kPi / 2, 1e-15);
  EXPECT_NEAR(fubini_study_distance(ket({1, 0}), ket({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)})), kPi / 4, 1e-15);
  EXPECT_NEAR(fubini_study_distance(psi * Complex(0, 3.0), ket({1, 0})), fubini_study_distance(psi, ket({1, 0})),
              1e-15);
  EXPECT_THROW(fubini_study_distance(CVector::Zero(2), psi), ZeroVectorError);
  EXPECT_THROW(fubini_study_distance(psi, ket({1, 0, 0})), DimensionMismatch);
}

TEST(QubitBures, ClosedFormExamples) {
  const Eigen::Vector3d dr(0.1, -0.2, 0.3);
  EXPECT_DOUBLE_EQ(qubit_bures_ds2(Eigen::Vector3d::Zero(), dr), 0.25 * dr.squaredNorm());
  const Eigen::Vector3d r(0.5, 0.0, 0.0), tangential(0.0, 0.3, -0.4);
  EXPECT_DOUBLE_EQ(qubit_bures_ds2(r, tangential), 0.25 * tangential.squaredNorm());
  EXPECT_THROW(qubit_bures_ds2(Eigen::Vector3d(0.6, 0.8, 0.0), dr), BoundaryError);
}

TEST(QubitBuresProperty, MatchesMonotoneMetric) {
  for (int k = 0; k < 500; ++k) {
    Rng rng = make_rng(84, "qubit-hemisphere", k);
    Eigen::Vector3d r;
    do {
      r = Eigen::Vector3d(sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1));
    } while (r.norm() >= 0.999);
    const Eigen::Vector3d dr(sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1));
    const DensityMatrix rho = DensityMatrix::bloch(r.x(), r.y(), r.z());
    CMatrix d(2, 2);
    d << Complex(dr.z(), 0), Complex(dr.x(), -dr.y()), Complex(dr.x(), dr.y()), Complex(-dr.z(), 0);
    const double closed = qubit_bures_ds2(r, dr);
    EXPECT_NEAR(monotone_ds2(rho, TangentPerturbation(CMatrix(0.5 * d)), MonotoneFunction::arithmetic()), closed,
                1e-10 * std::max(1.0, closed));
  }
}

}  // namespace
}  // namespace geostat
