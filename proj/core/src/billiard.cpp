#include "geostat/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "geostat/errors.hpp"
#include "geostat/measurement.hpp"

namespace geostat {

namespace {

struct LowestMode {
  double value;
  double slope;  // d lambda_min / dt via Hellmann-Feynman
};

LowestMode lowest_mode(const GeodesicPath& path, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(path.at(t).matrix());
  const CVector v = solver.eigenvectors().col(0);
  const double slope = (v.adjoint() * path.velocity(t).matrix() * v)(0, 0).real();
  return {solver.eigenvalues()(0), slope};
}

BouncePoint make_bounce(const GeodesicPath& path, double t) {
  BouncePoint b;
  b.t = t;
  b.rho = path.at(t);
  const EigenSystem es = eig(b.rho);
  b.kernel_state = es.vectors.col(0);
  b.min_eigenvalue = es.values(0);
  b.second_eigenvalue = es.values.size() > 1 ? es.values(1) : std::numeric_limits<double>::infinity();
  b.multiplicity = static_cast<int>((es.values.array() <= 1e-8).count());
  b.multiplicity = std::max(b.multiplicity, 1);
  return b;
}

/// Refines a bracket [lo, hi] with slope(lo) < 0 <= slope(hi) to machine
/// resolution by bisection on the slope.
double bisect_minimum(const GeodesicPath& path, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (lowest_mode(path, mid).slope < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BounceScan scan_once(const GeodesicPath& path, int samples, const BounceScanOptions& opt) {
  BounceScan scan;
  scan.samples_used = samples;
  const double period = std::numbers::pi;
  const double h = period / samples;
  std::vector<LowestMode> modes;
  modes.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) modes.push_back(lowest_mode(path, k * h));

  for (int k = 0; k < samples; ++k) {
    const LowestMode& a = modes[static_cast<std::size_t>(k)];
    const LowestMode& b = modes[static_cast<std::size_t>((k + 1) % samples)];  // rho(pi) = rho(0)
    if (!(a.slope < 0.0 && b.slope >= 0.0)) continue;
    double t = bisect_minimum(path, k * h, (k + 1) * h);
    if (t >= period) t -= period;
    BouncePoint bp = make_bounce(path, t);
    if (std::abs(bp.min_eigenvalue) > opt.root_tol) continue;  // a positive local minimum
    scan.points.push_back(std::move(bp));
  }
  std::sort(scan.points.begin(), scan.points.end(),
            [](const BouncePoint& x, const BouncePoint& y) { return x.t < y.t; });

  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const BouncePoint& p = scan.points[i];
    if (p.multiplicity > 1 || p.second_eigenvalue < opt.second_eigenvalue_floor) {
      scan.degenerate_root_warning = true;
    }
    if (scan.points.size() > 1) {
      const BouncePoint& q = scan.points[(i + 1) % scan.points.size()];
      double gap = q.t - p.t;
      if (gap < 0.0) gap += period;
      if (gap < opt.min_separation) scan.degenerate_root_warning = true;
    }
  }
  return scan;
}

/// Hungarian algorithm for a square cost matrix; returns assignment[row] = col.
std::vector<int> min_cost_assignment(const RMatrix& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

}  // namespace

BounceScan bounce_points(const GeodesicPath& path, const BounceScanOptions& options) {
  const auto n = static_cast<std::size_t>(path.dim());
  int samples = std::max(options.samples, 8);
  for (;;) {
    BounceScan scan = scan_once(path, samples, options);
    if (scan.points.size() == n) return scan;
    if (scan.points.size() < n && scan.degenerate_root_warning) return scan;
    if (samples >= options.max_samples) {
      throw ScanFailure("found " + std::to_string(scan.points.size()) + " boundary contacts, expected " +
                        std::to_string(n) + " (after " + std::to_string(samples) + " samples)");
    }
    samples = std::min(2 * samples, options.max_samples);
  }
}

BilliardReport verify_billiard_theorem(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                       const BounceScanOptions& options) {
  BilliardReport report;
  const GeodesicPath path = geodesic(rho1, rho2);
  report.scan = bounce_points(path, options);
  report.flagged = report.scan.degenerate_root_warning;

  const EigenSystem m = eig(fuchs_caves_operator(rho1, rho2));
  report.m_eigenvalues = m.values;
  report.m_eigenvectors = m.vectors;

  const Eigen::Index n = rho1.dim();
  const auto found = static_cast<Eigen::Index>(report.scan.points.size());
  // Rows: bounces (padded with zero-overlap dummies when the scan came up short).
  RMatrix overlap = RMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < found; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      overlap(i, k) = std::norm(m.vectors.col(k).dot(report.scan.points[static_cast<std::size_t>(i)].kernel_state));

  const std::vector<int> assignment = min_cost_assignment(RMatrix(1.0 - overlap.array()));
  report.max_infidelity = 0.0;
  for (Eigen::Index i = 0; i < found; ++i) {
    const int k = assignment[static_cast<std::size_t>(i)];
    report.pairings.push_back(k);
    const double inf = 1.0 - overlap(i, k);
    report.infidelities.push_back(inf);
    report.max_infidelity = std::max(report.max_infidelity, inf);
  }
  if (found < n) report.max_infidelity = 1.0;
  report.matched = found == n && report.max_infidelity <= 1e-6;
  return report;
}

RealRootsReport real_roots_check(const GeodesicPath& path, const BounceScanOptions& options) {
  RealRootsReport report;
  const Complex det0 = path.purification_at(0.0).determinant();
  const int samples = std::max(options.samples, 8);
  std::vector<Complex> ratios;
  ratios.reserve(static_cast<std::size_t>(samples + 1));
  double scale = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = std::numbers::pi * k / samples;
    const Complex r = path.purification_at(t).determinant() / det0;
    ratios.push_back(r);
    scale = std::max(scale, std::abs(r));
  }
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    report.max_imaginary_ratio = std::max(report.max_imaginary_ratio, std::abs(ratios[k].imag()) / scale);
    if (k > 0 && (ratios[k - 1].real() < 0.0) != (ratios[k].real() < 0.0)) ++report.sign_changes;
  }
  try {
    const BounceScan scan = bounce_points(path, options);
    report.degenerate_root_warning = scan.degenerate_root_warning;
    for (const BouncePoint& b : scan.points) {
      const double d = std::abs(path.purification_at(b.t).determinant() / det0) / scale;
      report.complex_det_residual = std::max(report.complex_det_residual, d);
    }
  } catch (const ScanFailure&) {
    report.degenerate_root_warning = true;
  }
  return report;
}

std::vector<std::pair<double, double>> min_eigenvalue_profile(const GeodesicPath& path, int samples) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(std::max(samples, 0)));
  for (int k = 0; k < samples; ++k) {
    const double t = std::numbers::pi * k / samples;
    out.emplace_back(t, min_eigenvalue(path.at(t)));
  }
  return out;
}

}  // namespace geostat
