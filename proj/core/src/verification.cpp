#include "geostat/verification.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "geostat/billiard.hpp"
#include "geostat/bures.hpp"
#include "geostat/classical.hpp"
#include "geostat/errors.hpp"
#include "geostat/measurement.hpp"
#include "geostat/monotone_metrics.hpp"
#include "geostat/operator_means.hpp"
#include "geostat/random.hpp"

namespace geostat {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// Great-circle angle between unit vectors, 2 atan2(|x - y|, |x + y|), which
// stays accurate for nearly parallel and nearly antipodal pairs.
double great_circle_arc(const RVector& x, const RVector& y) {
  return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

Outcome fisher_rao_sphere(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng = make_rng(seed, "acceptance-1", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 6);
    const ProbabilityVector p(sample_flat_dirichlet(rng, n));
    const ProbabilityVector q(sample_flat_dirichlet(rng, n));
    const double err = std::abs(fr_geodesic_distance(p, q) - great_circle_arc(sphere_embed(p), sphere_embed(q)));
    worst = std::max(worst, err);
  }
  return {worst <= 1e-10, "1000 pairs, max |D_FR - arc| = " + fmt(worst) + " (tol 1e-10)"};
}

Outcome classical_monotonicity(std::uint64_t seed) {
  const MonotonicityReport rep = monotonicity_stress(derive_seed(seed, "acceptance-2"), 10000);
  const StochasticMatrix t = StochasticMatrix::coarse_graining();
  const ProbabilityVector p(RVector::Unit(3, 0));
  const ProbabilityVector q((RVector(3) << 0.0, 0.5, 0.5).finished());
  const double before = flat_distance(p, q);
  const double after = flat_distance(apply_stochastic(t, p), apply_stochastic(t, q));
  const bool flat_ok = std::abs(before - std::sqrt(1.5)) <= 1e-12 && std::abs(after - std::sqrt(2.0)) <= 1e-12;
  return {rep.violations == 0 && flat_ok,
          std::to_string(rep.violations) + " violations in 10000 trials (max excess " + fmt(rep.max_excess) +
              "); flat stretch " + fmt(before) + " -> " + fmt(after)};
}

Outcome multinomial_ellipse(std::uint64_t seed) {
  const ProbabilityVector p(RVector::Constant(3, 1.0 / 3.0));
  const EllipseReport rep = multinomial_ellipse_experiment(p, 100000, 10000, derive_seed(seed, "acceptance-3"));
  return {rep.max_rel_err <= 0.05, "N=3, 1e5 samples x 1e4 trials, max rel err " + fmt(rep.max_rel_err) + " (tol 0.05)"};
}

Outcome mean_ordering(std::uint64_t seed) {
  const auto ar = MonotoneFunction::arithmetic();
  const auto ge = MonotoneFunction::geometric();
  const auto ha = MonotoneFunction::harmonic();
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    Rng rng = make_rng(seed, "acceptance-4", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 6);
    const HermitianMatrix a = sample_positive_definite(rng, n);
    const HermitianMatrix b = sample_positive_definite(rng, n);
    const HermitianMatrix h = operator_mean(a, b, ha);
    const HermitianMatrix g = operator_mean(a, b, ge);
    const HermitianMatrix m = operator_mean(a, b, ar);
    worst = std::min({worst, min_eigenvalue(g - h), min_eigenvalue(m - g)});
  }
  bool axioms_ok = true;
  std::string axioms;
  for (const auto& f : {ar, ge, ha}) {
    const MeanAxiomsReport r = mean_axioms_check(f, derive_seed(seed, "acceptance-4-axioms"), 1000);
    axioms_ok = axioms_ok && r.total_violations() == 0;
    axioms += " " + f.name() + ":" + std::to_string(r.total_violations());
  }
  const auto square = [](double t) { return t * t; };
  const OperatorMonotoneReport sq = operator_monotone_test(square, 2, derive_seed(seed, "acceptance-4-t2"), 10000);
  const bool found = sq.counterexample.has_value();
  return {worst >= -1e-9 && axioms_ok && found,
          "ordering slack " + fmt(worst) + "; axiom violations" + axioms + "; t^2 counterexample " +
              (found ? "found after " + std::to_string(sq.trials_run) + " trials" : std::string("not found"))};
}

HermitianMatrix random_traceless(Rng& rng, Eigen::Index n) {
  const CMatrix g = sample_ginibre(rng, n, n);
  HermitianMatrix h(g);
  h = h - HermitianMatrix::identity(n) * (h.trace() / static_cast<double>(n));
  return h * (1.0 / hs_norm(h.matrix()));
}

// Bures angle as the chord between the fibres over rho1 and rho2,
// 2 asin(|A2 - A1| / 2) with A1 = sqrt(rho1) and A2 its horizontal lift.
// A2 - A1 = rho1^{-1/2} Z where Z = sqrt(Y) - rho1, Y = sqrt(rho1) rho2
// sqrt(rho1), solves rho1 Z + Z sqrt(Y) = Y - rho1^2. Solving that
// Sylvester equation in the two eigenbases avoids the cancellation in
// sqrt(Y) - rho1, so nearby states keep full relative precision.
double bures_angle_chord(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const EigenSystem e1 = eig(rho1.hermitian());
  const HermitianMatrix r1 = matrix_function(e1, [](double x) { return std::sqrt(x); }, 0.0);
  const HermitianMatrix rhs(CMatrix(r1.matrix() * (rho2.matrix() - rho1.matrix()) * r1.matrix()));
  const EigenSystem es = eig(sqrtm(rho2.hermitian().conjugated(r1.matrix())));
  CMatrix z = e1.vectors.adjoint() * rhs.matrix() * es.vectors;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) /= e1.values(i) + es.values(j);
  }
  // rho1^{-1/2} Z, with Z still expressed in the (e1, es) bases.
  const RVector inv_root = e1.values.cwiseSqrt().cwiseInverse();
  const double chord = (inv_root.asDiagonal() * z).norm();
  return 2.0 * std::asin(0.5 * chord);
}

Outcome metric_consistency(std::uint64_t seed) {
  const auto ar = MonotoneFunction::arithmetic();
  double worst_order = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    Rng rng = make_rng(seed, "acceptance-5", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 4);
    const DensityMatrix rho(sample_density_hs(rng, n));
    const HermitianMatrix dir = random_traceless(rng, n);
    // Order is the least-squares slope of log|err| against log t over the
    // last kFit of kLevels halvings, where the cubic term dominates.
    const double t0 = 0.1 * rho.min_eigenvalue();
    constexpr int kLevels = 12;
    constexpr int kFit = 4;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int h = kLevels - kFit; h < kLevels; ++h) {
      const double t = t0 / std::pow(2.0, h);
      const DensityMatrix moved = DensityMatrix::normalized(rho.hermitian() + dir * t);
      const double d = bures_angle_chord(rho, moved);
      const double err = std::abs(d * d - monotone_ds2(rho, TangentPerturbation(dir * t), ar));
      const double x = std::log(t), y = std::log(err);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    worst_order = std::min(worst_order, (kFit * sxy - sx * sy) / (kFit * sxx - sx * sx));
  }
  double worst_diag = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng rng = make_rng(seed, "acceptance-5-diag", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 6);
    const RVector lambda = sample_flat_dirichlet(rng, n);
    RVector dp = RVector::NullaryExpr(n, [&] { return sample_uniform(rng, -1.0, 1.0); });
    dp.array() -= dp.mean();
    dp *= 0.1;
    const double fr = fisher_rao_ds2(ProbabilityVector(lambda), TangentVector(dp));
    const DensityMatrix rho = DensityMatrix::diagonal(lambda);
    const TangentPerturbation drho(HermitianMatrix::diagonal(dp));
    for (const auto& f : {MonotoneFunction::arithmetic(), MonotoneFunction::geometric(), MonotoneFunction::harmonic()}) {
      worst_diag = std::max(worst_diag, std::abs(monotone_ds2(rho, drho, f) - fr) / std::max(1.0, fr));
    }
  }
  return {worst_order >= 2.5 && worst_diag <= 1e-12,
          "min observed order " + fmt(worst_order) + " (>= 2.5); diagonal sector max err " + fmt(worst_diag) +
              " (tol 1e-12)"};
}

Outcome qubit_hemisphere(std::uint64_t seed) {
  const auto ar = MonotoneFunction::arithmetic();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng = make_rng(seed, "acceptance-6", static_cast<std::uint64_t>(k));
    Eigen::Vector3d r;
    do {
      r = Eigen::Vector3d(sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1));
    } while (r.norm() >= 1.0 - 1e-6);
    const Eigen::Vector3d dr(sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1), sample_uniform(rng, -1, 1));
    CMatrix d(2, 2);
    d << Complex(dr.z(), 0), Complex(dr.x(), -dr.y()),
         Complex(dr.x(), dr.y()), Complex(-dr.z(), 0);
    const double closed = qubit_bures_ds2(r, dr);
    const double general = monotone_ds2(DensityMatrix::bloch(r.x(), r.y(), r.z()),
                                        TangentPerturbation(CMatrix(0.5 * d)), ar);
    worst = std::max(worst, std::abs(closed - general) / std::max(1.0, closed));
  }
  return {worst <= 1e-10, "1000 interior points, max rel err " + fmt(worst) + " (tol 1e-10)"};
}

Outcome fidelity_lift(std::uint64_t seed) {
  double sym = 0.0, lift = 0.0, riccati = 0.0, inverse = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng = make_rng(seed, "acceptance-7", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 5);
    const DensityMatrix r1(sample_density_hs(rng, n));
    const DensityMatrix r2(sample_density_hs(rng, n));
    const double f12 = fidelity(r1, r2);
    sym = std::max(sym, std::abs(f12 - fidelity(r2, r1)));
    const Purification a1 = purify(r1);
    const Purification a2 = horizontal_lift(r1, r2, a1);
    lift = std::max(lift, std::abs((a1.matrix().adjoint() * a2.matrix()).trace() - Complex(std::sqrt(f12), 0.0)));
    const HermitianMatrix m12 = fuchs_caves_operator(r1, r2);
    const HermitianMatrix m21 = fuchs_caves_operator(r2, r1);
    riccati = std::max(riccati, (m12.matrix() * r1.matrix() * m12.matrix() - r2.matrix()).norm());
    inverse = std::max(inverse, (m12.matrix() * m21.matrix() - CMatrix::Identity(n, n)).norm());
  }
  return {sym <= 1e-10 && lift <= 1e-9 && riccati <= 1e-9 && inverse <= 1e-9,
          "1000 pairs: symmetry " + fmt(sym) + ", Tr(A1'A2)-sqrtF " + fmt(lift) + ", M r1 M - r2 " + fmt(riccati) +
              ", M12 M21 - 1 " + fmt(inverse)};
}

Eigen::Vector3d m_axis(const DensityMatrix& r1, const DensityMatrix& r2) {
  const EigenSystem es = eig(fuchs_caves_operator(r1, r2));
  return bloch_vector(DensityMatrix::pure(es.vectors.col(0)));
}

Outcome fuchs_caves_optimality(std::uint64_t seed) {
  constexpr int kGrid = 200;
  double worst_gap = 0.0, worst_axis = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng rng = make_rng(seed, "acceptance-8", static_cast<std::uint64_t>(k));
    const DensityMatrix r1(sample_density_hs(rng, 2));
    const DensityMatrix r2(sample_density_hs(rng, 2));
    const QubitSearchReport rep = qubit_povm_search(r1, r2, kGrid, 60);
    worst_gap = std::max(worst_gap, std::abs(rep.best_angle - bures_angle(r1, r2)));
    const double sep = std::acos(std::clamp(std::abs(rep.best_axis.dot(m_axis(r1, r2))), 0.0, 1.0));
    worst_axis = std::max(worst_axis, sep);
  }
  double worst_excess = -1.0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng = make_rng(seed, "acceptance-8-povm", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 4);
    const DensityMatrix r1(sample_density_hs(rng, n));
    const DensityMatrix r2(sample_density_hs(rng, n));
    const Povm e = sample_povm(rng, n, sample_index(rng, n, 2 * n + 2));
    worst_excess = std::max(worst_excess, povm_classical_angle(e, r1, r2) - bures_angle(r1, r2));
  }
  const double axis_tol = std::numbers::pi / kGrid;
  return {worst_gap <= 1e-4 && worst_axis <= axis_tol && worst_excess <= 1e-9,
          "grid search gap " + fmt(worst_gap) + " (tol 1e-4), axis error " + fmt(worst_axis) + " (tol " +
              fmt(axis_tol) + "); random POVM max excess " + fmt(worst_excess) + " (tol 1e-9)"};
}

Outcome pure_state_ambiguity(std::uint64_t) {
  const auto qubit = [](double beta) {
    return CVector((CVector(2) << std::cos(0.5 * beta), std::sin(0.5 * beta)).finished());
  };
  const auto axis_measurement = [](double alpha) {
    CMatrix basis(2, 2);
    basis << std::cos(0.5 * alpha), -std::sin(0.5 * alpha),
             std::sin(0.5 * alpha), std::cos(0.5 * alpha);
    return Povm::projective(basis);
  };
  double worst = 0.0;
  int points = 0;
  for (int i = 0; i < 25; ++i) {
    const double theta = std::numbers::pi * (i + 0.5) / 25.0;
    const DensityMatrix r1 = DensityMatrix::pure(qubit(0.0));
    const DensityMatrix r2 = DensityMatrix::pure(qubit(theta));
    for (int j = 0; j < 20; ++j) {
      const double s = j / 20.0;
      const double in_a = s * 0.5 * theta;
      const double out_a = s * 0.5 * (std::numbers::pi - theta);
      worst = std::max(worst, std::abs(pure_state_qubit_angle(theta, in_a, DiameterSide::inside) -
                                       povm_classical_angle(axis_measurement(in_a), r1, r2)));
      worst = std::max(worst, std::abs(pure_state_qubit_angle(theta, out_a, DiameterSide::outside) -
                                       povm_classical_angle(axis_measurement(-out_a), r1, r2)));
      points += 2;
    }
  }
  return {worst <= 1e-9, std::to_string(points) + " (theta, theta_A) points, max err " + fmt(worst) + " (tol 1e-9)"};
}

Outcome billiard_theorem(std::uint64_t seed) {
  int total = 0, flagged = 0, failures = 0;
  double worst_inf = 0.0;
  std::string first_failure;
  for (Eigen::Index n = 2; n <= 5; ++n) {
    for (int k = 0; k < 200; ++k) {
      Rng rng = make_rng(seed, "acceptance-10-dim" + std::to_string(n), static_cast<std::uint64_t>(k));
      const DensityMatrix r1(sample_density_hs(rng, n));
      const DensityMatrix r2(sample_density_hs(rng, n));
      ++total;
      try {
        const BilliardReport rep = verify_billiard_theorem(r1, r2);
        if (rep.flagged) {
          ++flagged;
          continue;
        }
        worst_inf = std::max(worst_inf, rep.max_infidelity);
        if (!rep.matched || rep.scan.points.size() != static_cast<std::size_t>(n)) {
          ++failures;
          if (first_failure.empty()) first_failure = " first failure: N=" + std::to_string(n) + " run " + std::to_string(k);
        }
      } catch (const ScanFailure& e) {
        ++failures;
        if (first_failure.empty()) first_failure = std::string(" first failure: ") + e.what();
      }
    }
  }
  const double flagged_rate = static_cast<double>(flagged) / total;
  return {failures == 0 && flagged_rate < 0.05,
          std::to_string(total) + " runs, " + std::to_string(failures) + " failures, " + std::to_string(flagged) +
              " flagged, max infidelity " + fmt(worst_inf) + " (tol 1e-6)" + first_failure};
}

struct CriterionSpec {
  const char* name;
  double budget;
  Outcome (*run)(std::uint64_t);
};

constexpr CriterionSpec kCriteria[kCriterionCount] = {
    {"Fisher-Rao distance equals octant great-circle arc", 5.0, fisher_rao_sphere},
    {"Classical monotonicity and flat-metric stretch", 10.0, classical_monotonicity},
    {"Multinomial frequency covariance", 60.0, multinomial_ellipse},
    {"Mean ordering, mean axioms, t^2 not operator monotone", 0.0, mean_ordering},
    {"Monotone metric vs Bures angle; diagonal sector", 0.0, metric_consistency},
    {"Qubit hemisphere closed form", 0.0, qubit_hemisphere},
    {"Fidelity symmetry, horizontal lift, Riccati relation", 0.0, fidelity_lift},
    {"Optimal measurement attains the Bures angle", 120.0, fuchs_caves_optimality},
    {"Pure-state measurement ambiguity", 0.0, pure_state_ambiguity},
    {"Billiard bounce states are the eigenstates of M", 300.0, billiard_theorem},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const CriterionSpec& spec = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = spec.name;
  result.budget_seconds = spec.budget;
  const auto start = Clock::now();
  try {
    const Outcome out = spec.run(seed);
    result.passed = out.passed;
    result.detail = out.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (spec.budget > 0.0 && result.seconds > spec.budget) {
    result.passed = false;
    result.detail += "; runtime " + fmt(result.seconds) + " s exceeds budget";
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id, seed));
    if (on_result) on_result(results.back());
  }
  return results;
}

}  // namespace geostat
