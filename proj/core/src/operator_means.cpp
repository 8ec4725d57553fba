#include "geostat/operator_means.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "geostat/errors.hpp"
#include "geostat/random.hpp"

namespace geostat {

MonotoneFunction::MonotoneFunction(Tag tag, std::string name, std::function<double(double)> f)
    : tag_(tag), name_(std::move(name)), f_(std::move(f)) {}

MonotoneFunction MonotoneFunction::arithmetic() {
  return {Tag::arithmetic, "arithmetic", [](double t) { return 0.5 * (1.0 + t); }};
}

MonotoneFunction MonotoneFunction::geometric() {
  return {Tag::geometric, "geometric", [](double t) { return std::sqrt(t); }};
}

MonotoneFunction MonotoneFunction::harmonic() {
  return {Tag::harmonic, "harmonic", [](double t) { return 2.0 * t / (1.0 + t); }};
}

MonotoneFunction MonotoneFunction::custom(std::string name, std::function<double(double)> f,
                                          bool require_symmetric) {
  MonotoneFunction mf(Tag::custom, std::move(name), std::move(f));
  if (std::abs(mf(1.0) - 1.0) > 1e-12) throw DomainError("f(1) != 1 for " + mf.name());
  if (require_symmetric && !mf.is_symmetric()) {
    throw DomainError("f(1/t) != f(t)/t for " + mf.name());
  }
  return mf;
}

MonotoneFunction MonotoneFunction::from_name(const std::string& name) {
  if (name == "arithmetic") return arithmetic();
  if (name == "geometric") return geometric();
  if (name == "harmonic") return harmonic();
  throw DomainError("unknown mean '" + name + "' (expected arithmetic, geometric or harmonic)");
}

double MonotoneFunction::symmetry_defect() const {
  double worst = 0.0;
  constexpr int kGrid = 121;
  for (int k = 0; k < kGrid; ++k) {
    const double t = std::pow(10.0, -3.0 + 6.0 * k / (kGrid - 1));
    const double lhs = f_(1.0 / t);
    const double rhs = f_(t) / t;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

HermitianMatrix operator_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                              const MonotoneFunction& f) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator_mean: dimension mismatch");
  const EigenSystem ea = eig(a);
  const double norm = ea.values.cwiseAbs().maxCoeff();
  if (!(ea.values(0) > 1e-12 * norm)) throw SingularError("operator_mean: A is not invertible");
  const HermitianMatrix root = matrix_function(ea, [](double x) { return std::sqrt(x); });
  const HermitianMatrix inv_root = matrix_function(ea, [](double x) { return 1.0 / std::sqrt(x); });
  const HermitianMatrix inner = b.conjugated(inv_root.matrix());
  const HermitianMatrix f_inner = matrix_function(inner, f.function(), 0.0);
  return f_inner.conjugated(root.matrix());
}

HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  return operator_mean(a, b, MonotoneFunction::geometric());
}

namespace {

double scaled_min_eigenvalue(const HermitianMatrix& diff, const HermitianMatrix& ref) {
  return min_eigenvalue(diff) / std::max(1.0, hs_norm(ref.matrix()));
}

}  // namespace

MeanAxiomsReport mean_axioms_check(const MonotoneFunction& f, std::uint64_t seed, int trials,
                                   double tol) {
  MeanAxiomsReport r;
  r.trials = std::max(trials, 0);
  for (int k = 0; k < trials; ++k) {
    Rng rng = make_rng(seed, "mean-axioms", static_cast<std::uint64_t>(k));
    const Eigen::Index n = sample_index(rng, 2, 6);
    const HermitianMatrix c = sample_positive_definite(rng, n, 0.05);
    const HermitianMatrix d = sample_positive_definite(rng, n, 0.05);
    const HermitianMatrix a = c + sample_psd(rng, n, sample_index(rng, 1, n));
    const HermitianMatrix b = d + sample_psd(rng, n, sample_index(rng, 1, n));
    const HermitianMatrix ab = operator_mean(a, b, f);

    // a)
    const double res_a = relative_hs_error(operator_mean(a, a, f).matrix(), a.matrix());
    r.max_residual_idempotent = std::max(r.max_residual_idempotent, res_a);
    if (res_a > tol) ++r.violations_idempotent;

    // b)
    const double alpha = std::exp(sample_uniform(rng, std::log(1e-2), std::log(1e2)));
    const double res_b =
        relative_hs_error(operator_mean(a * alpha, b * alpha, f).matrix(), (ab * alpha).matrix());
    r.max_residual_homogeneous = std::max(r.max_residual_homogeneous, res_b);
    if (res_b > tol) ++r.violations_homogeneous;

    // c)
    const HermitianMatrix cd = operator_mean(c, d, f);
    const double lam = scaled_min_eigenvalue(ab - cd, ab);
    r.worst_monotone_eigenvalue = std::min(r.worst_monotone_eigenvalue, lam);
    if (lam < -tol) ++r.violations_monotone;

    // d)
    const CMatrix u = sample_haar_unitary(rng, n);
    const double res_d = relative_hs_error(operator_mean(a.conjugated(u), b.conjugated(u), f).matrix(),
                                           ab.conjugated(u).matrix());
    r.max_residual_unitary = std::max(r.max_residual_unitary, res_d);
    if (res_d > tol) ++r.violations_unitary;
  }
  return r;
}

std::optional<double> operator_monotone_violation(const std::function<double(double)>& f,
                                                  const HermitianMatrix& a, const HermitianMatrix& b,
                                                  double tol) {
  const HermitianMatrix fa = matrix_function(a, f, 0.0);
  const HermitianMatrix fb = matrix_function(b, f, 0.0);
  const double scale = std::max(1.0, hs_norm(fa.matrix()));
  const double lam = min_eigenvalue(fa - fb);
  if (psd_order_geq(fa, fb, tol * scale)) return std::nullopt;
  return lam;
}

OperatorMonotoneReport operator_monotone_test(const std::function<double(double)>& f, Eigen::Index dim,
                                              std::uint64_t seed, int trials, double tol) {
  if (dim < 2) throw DomainError("operator_monotone_test needs dim >= 2");
  OperatorMonotoneReport report;
  report.trials = trials;
  for (int k = 0; k < trials; ++k) {
    Rng rng = make_rng(seed, "operator-monotone", static_cast<std::uint64_t>(k));
    // B generic PSD; A = B + P with P PSD of random rank (rank one is
    // where non-monotone behaviour shows first).
    const HermitianMatrix b = sample_psd(rng, dim, dim);
    const HermitianMatrix p = sample_psd(rng, dim, sample_index(rng, 1, dim)) * sample_uniform(rng, 0.01, 1.0);
    const HermitianMatrix a = b + p;
    ++report.trials_run;
    if (auto lam = operator_monotone_violation(f, a, b, tol)) {
      report.counterexample = OperatorMonotoneReport::Counterexample{a, b, *lam};
      break;
    }
  }
  return report;
}

}  // namespace geostat
