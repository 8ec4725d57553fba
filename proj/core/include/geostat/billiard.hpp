#pragma once

#include <utility>
#include <vector>

#include "geostat/bures.hpp"

namespace geostat {

/// A point where the extended geodesic meets the boundary of state space.
struct BouncePoint {
  double t = 0.0;
  HermitianMatrix rho;
  /// Unit vector spanning the kernel of rho (phase-fixed).
  CVector kernel_state;
  /// Number of eigenvalues of rho below 1e-8.
  int multiplicity = 1;
  double min_eigenvalue = 0.0;
  double second_eigenvalue = 0.0;
};

struct BounceScanOptions {
  int samples = 2048;
  int max_samples = 65536;
  /// Bisection stops once |lambda_min| <= this.
  double root_tol = 1e-10;
  /// Roots closer than this (in t) flag a multiple root.
  double min_separation = 1e-6;
  /// A bounce whose second-smallest eigenvalue is below this is flagged as a
  /// (near) multiple root.
  double second_eigenvalue_floor = 1e-6;
};

struct BounceScan {
  std::vector<BouncePoint> points;  // sorted by t in [0, pi)
  bool degenerate_root_warning = false;
  int samples_used = 0;
};

/// Locates the boundary contacts of the great circle over one half period
/// [0, pi): lambda_min(rho(t)) touches zero quadratically, so minima are
/// bracketed by sign changes of its derivative v^dagger rho'(t) v (v the
/// lowest eigenvector) and refined by bisection. The grid is doubled up to
/// max_samples while fewer than N contacts are found; a still-short scan
/// throws ScanFailure unless it was flagged as degenerate.
BounceScan bounce_points(const GeodesicPath& path, const BounceScanOptions& options = {});

struct BilliardReport {
  bool matched = false;
  bool flagged = false;  // multiple or near-multiple roots
  BounceScan scan;
  RVector m_eigenvalues;
  CMatrix m_eigenvectors;
  /// pairings[i] = index of the M eigenvector matched to bounce i.
  std::vector<int> pairings;
  /// 1 - |<bounce|eigvec>|^2, per pairing and its maximum.
  std::vector<double> infidelities;
  double max_infidelity = 1.0;
};

/// Computes bounce kernel states of the geodesic through rho1, rho2 and
/// matches them to the eigenvectors of the Fuchs-Caves operator by an
/// optimal (exhaustive) assignment maximizing total overlap. matched iff
/// every pairing has overlap >= 1 - 1e-6.
BilliardReport verify_billiard_theorem(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                       const BounceScanOptions& options = {});

struct RealRootsReport {
  /// Sign changes of det A(t) / det A(0) over [0, pi].
  int sign_changes = 0;
  /// Largest |Im| / |.| of det A(t) / det A(0) over the grid: zero when the
  /// circle lies in a plane with real characteristic roots.
  double max_imaginary_ratio = 0.0;
  /// max over bounces of |det A(t_b)| / |det A(0)|.
  double complex_det_residual = 0.0;
  bool degenerate_root_warning = false;
};

RealRootsReport real_roots_check(const GeodesicPath& path, const BounceScanOptions& options = {});

/// Samples (t, lambda_min(rho(t))) on [0, pi) for plotting.
std::vector<std::pair<double, double>> min_eigenvalue_profile(const GeodesicPath& path, int samples);

}  // namespace geostat
