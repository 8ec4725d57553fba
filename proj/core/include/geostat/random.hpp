#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "geostat/matrix.hpp"

namespace geostat {

using Rng = std::mt19937_64;

/// Derives an independent sub-stream seed from a master seed and a purpose
/// label (FNV-1a over the label, mixed through splitmix64). An optional index
/// selects per-trial substreams so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);
Rng make_rng(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

/// Flat Dirichlet sample (uniform on the simplex), length n.
RVector sample_flat_dirichlet(Rng& rng, Eigen::Index n);

/// n x m matrix of i.i.d. standard complex Gaussians.
CMatrix sample_ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-random unitary (QR of a Ginibre matrix with the R-diagonal phases
/// divided out).
CMatrix sample_haar_unitary(Rng& rng, Eigen::Index n);

/// rows x cols matrix with orthonormal columns (rows >= cols), Haar
/// distributed.
CMatrix sample_haar_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Hilbert-Schmidt random density matrix G G^dagger / Tr(G G^dagger).
HermitianMatrix sample_density_hs(Rng& rng, Eigen::Index n);

/// Random positive definite matrix G G^dagger / n + shift * I.
HermitianMatrix sample_positive_definite(Rng& rng, Eigen::Index n, double shift = 1e-2);

/// Random PSD matrix of given rank (G G^dagger with G of shape n x rank).
HermitianMatrix sample_psd(Rng& rng, Eigen::Index n, Eigen::Index rank);

/// Random invertible complex matrix.
CMatrix sample_invertible(Rng& rng, Eigen::Index n);

double sample_uniform(Rng& rng, double lo, double hi);
Eigen::Index sample_index(Rng& rng, Eigen::Index lo, Eigen::Index hi);  // inclusive

}  // namespace geostat
