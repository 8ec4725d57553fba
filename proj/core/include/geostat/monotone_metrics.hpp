#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geostat/density_matrix.hpp"
#include "geostat/operator_means.hpp"

namespace geostat {

/// Squared line element of the monotone metric selected by f at rho:
///
///   ds^2 = 1/4 [ sum_i |ds_ii|^2 / l_i + 2 sum_{i<j} |ds_ij|^2 / (l_j f(l_i/l_j)) ]
///
/// where rho = V diag(l) V^dagger and ds = V^dagger drho V.
/// Throws BoundaryError unless every eigenvalue of rho exceeds 1e-10.
double monotone_ds2(const DensityMatrix& rho, const TangentPerturbation& drho, const MonotoneFunction& f);

/// Completely positive trace preserving map in Kraus form.
class KrausChannel {
 public:
  /// Throws DomainError unless sum_k K_k^dagger K_k = 1 within 1e-10.
  explicit KrausChannel(std::vector<CMatrix> kraus);

  Eigen::Index input_dim() const { return kraus_.front().cols(); }
  Eigen::Index output_dim() const { return kraus_.front().rows(); }
  const std::vector<CMatrix>& operators() const { return kraus_; }

  CMatrix apply(const CMatrix& x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;
  TangentPerturbation apply(const TangentPerturbation& drho) const;

 private:
  std::vector<CMatrix> kraus_;
};

/// Stinespring construction from a Haar isometry C^n -> C^n (x) C^env.
KrausChannel sample_channel(std::mt19937_64& rng, Eigen::Index n, Eigen::Index env_dim);

struct FConditionsReport {
  bool operator_monotone = false;     // i)
  bool symmetric = false;             // ii)
  bool normalized = false;            // iii)
  bool boundary_divergent = false;    // f(0) = 0: metric diverges on the boundary
  double symmetry_defect = 0.0;
  double f_at_one = 0.0;
  /// Dimension at which condition i) failed (0 when it held).
  Eigen::Index counterexample_dim = 0;

  bool all_pass() const { return operator_monotone && symmetric && normalized; }
};

/// Checks conditions i) (randomized, dims 2..4), ii) (grid) and iii).
FConditionsReport f_conditions_check(const MonotoneFunction& f, std::uint64_t seed,
                                     int trials_per_dim = 2000);

}  // namespace geostat
