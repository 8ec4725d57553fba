#include "geostat/random.hpp"

#include <cmath>

namespace geostat {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a(label)) + index);
}

Rng make_rng(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return Rng(derive_seed(seed, label, index));
}

double sample_uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::Index sample_index(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

RVector sample_flat_dirichlet(Rng& rng, Eigen::Index n) {
  std::exponential_distribution<double> expo(1.0);
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Guard against an exact zero so the sample is strictly interior.
    double e = 0.0;
    while (e <= 0.0) e = expo(rng);
    v(i) = e;
  }
  return v / v.sum();
}

CMatrix sample_ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

CMatrix sample_haar_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  const CMatrix g = sample_ginibre(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

CMatrix sample_haar_unitary(Rng& rng, Eigen::Index n) { return sample_haar_isometry(rng, n, n); }

HermitianMatrix sample_density_hs(Rng& rng, Eigen::Index n) {
  const CMatrix g = sample_ginibre(rng, n, n);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianMatrix(rho);
}

HermitianMatrix sample_positive_definite(Rng& rng, Eigen::Index n, double shift) {
  const CMatrix g = sample_ginibre(rng, n, n);
  CMatrix a = g * g.adjoint() / static_cast<double>(n);
  a += shift * CMatrix::Identity(n, n);
  return HermitianMatrix(a);
}

HermitianMatrix sample_psd(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  const CMatrix g = sample_ginibre(rng, n, rank);
  return HermitianMatrix(CMatrix(g * g.adjoint() / static_cast<double>(n)));
}

CMatrix sample_invertible(Rng& rng, Eigen::Index n) {
  for (;;) {
    CMatrix x = sample_ginibre(rng, n, n);
    Eigen::JacobiSVD<CMatrix> svd(x);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 1e-3 * s(0)) return x;
  }
}

}  // namespace geostat
