#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "geostat/matrix.hpp"

namespace geostat {

/// A scalar function on (0, inf) selecting an operator mean or a monotone
/// metric. Construction checks f(1) = 1; symmetric use additionally checks
/// f(1/t) = f(t)/t on a logarithmic grid over [1e-3, 1e3].
class MonotoneFunction {
 public:
  enum class Tag { arithmetic, geometric, harmonic, custom };

  static MonotoneFunction arithmetic();
  static MonotoneFunction geometric();
  static MonotoneFunction harmonic();
  /// Throws DomainError if f(1) != 1, or if require_symmetric and the
  /// transpose symmetry fails.
  static MonotoneFunction custom(std::string name, std::function<double(double)> f,
                                 bool require_symmetric = false);
  /// Parses "arithmetic" | "geometric" | "harmonic".
  static MonotoneFunction from_name(const std::string& name);

  double operator()(double t) const { return f_(t); }
  const std::function<double(double)>& function() const { return f_; }
  Tag tag() const { return tag_; }
  const std::string& name() const { return name_; }

  /// Largest |f(1/t) - f(t)/t| (relative to max(1, |f(t)/t|)) on the grid.
  double symmetry_defect() const;
  bool is_symmetric(double tol = 1e-10) const { return symmetry_defect() <= tol; }

 private:
  MonotoneFunction(Tag tag, std::string name, std::function<double(double)> f);

  Tag tag_;
  std::string name_;
  std::function<double(double)> f_;
};

/// A#B = sqrt(A) f(A^{-1/2} B A^{-1/2}) sqrt(A). A must be strictly positive
/// definite (lambda_min > 1e-12 ||A||), B positive semidefinite.
HermitianMatrix operator_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                              const MonotoneFunction& f);

HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b);

struct MeanAxiomsReport {
  int trials = 0;
  int violations_idempotent = 0;    // a) A#A = A
  int violations_homogeneous = 0;   // b) (xA)#(xB) = x(A#B)
  int violations_monotone = 0;      // c) A>=C, B>=D => A#B >= C#D
  int violations_unitary = 0;       // d) (UAU*)#(UBU*) = U(A#B)U*
  double max_residual_idempotent = 0.0;
  double max_residual_homogeneous = 0.0;
  double worst_monotone_eigenvalue = 0.0;  // most negative lambda_min(A#B - C#D), normalized
  double max_residual_unitary = 0.0;

  int total_violations() const {
    return violations_idempotent + violations_homogeneous + violations_monotone + violations_unitary;
  }
};

/// Randomized check of the four mean axioms on positive pairs of dimension
/// 2..6, tolerance 1e-8 (relative HS norm for equalities, PSD order for c).
MeanAxiomsReport mean_axioms_check(const MonotoneFunction& f, std::uint64_t seed, int trials,
                                   double tol = 1e-8);

struct OperatorMonotoneReport {
  int trials = 0;
  int trials_run = 0;
  struct Counterexample {
    HermitianMatrix a;
    HermitianMatrix b;
    double min_eigenvalue = 0.0;  // of f(A) - f(B)
  };
  std::optional<Counterexample> counterexample;
};

/// Samples A >= B >= 0 and tests f(A) >= f(B) in PSD order; stops at the
/// first counterexample.
OperatorMonotoneReport operator_monotone_test(const std::function<double(double)>& f, Eigen::Index dim,
                                              std::uint64_t seed, int trials, double tol = 1e-9);

/// Single-pair check used by the sampler: nullopt when f(A) >= f(B) holds.
std::optional<double> operator_monotone_violation(const std::function<double(double)>& f,
                                                  const HermitianMatrix& a, const HermitianMatrix& b,
                                                  double tol = 1e-9);

}  // namespace geostat
