#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coarse/cmatrix.hpp"

namespace coarse {

/// Matrices whose smaller side is at most this size use the exact Jacobi SVD.
inline constexpr std::size_t kExactSvdLimit = 64;

struct NormEstimate {
  double value = 0.0;
  /// Certified gap to the true spectral norm (0 for the exact path).
  double residual = 0.0;
  int iterations = 0;
};

struct SingularPair {
  CVector u;
  double sigma = 0.0;
  CVector v;
};

/// Thin SVD, singular values in descending order; U is rows x k, V is cols x k
/// with k = min(rows, cols).
struct Svd {
  std::vector<double> sigma;
  CMatrix u;
  CMatrix v;
};

/// One-sided (Hestenes) Jacobi SVD.
Svd jacobi_svd(const CMatrix& m);
std::vector<double> singular_values(const CMatrix& m);

/// Spectral norm. Power iteration on the smaller Gram matrix from a fixed
/// phase-perturbed all-ones seed, stopping once the Rayleigh-quotient residual
/// certifies `tol`; exact Jacobi SVD when min(rows, cols) <= kExactSvdLimit.
NormEstimate op_norm(const CMatrix& m, double tol = 1e-12);

/// Top singular triple. Throws Error("zero_matrix") for M = 0.
SingularPair top_singular_pair(const CMatrix& m, double tol = 1e-12);

/// Row-major 0/1 mask with the same shape as the matrix it constrains.
using Pattern = std::vector<std::uint8_t>;

struct BandNearnessResult {
  CMatrix s;
  /// ||T - S|| for the returned S.
  double dist = 0.0;
  /// Caller-supplied certificate, or 0.
  double lower = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Approximates min ||T - S|| over S supported on `pattern` by projected
/// subgradient descent on sigma_max, starting from the pattern truncation of
/// T (a feasible point). Polyak steps when `lower` is given, c / sqrt(k)
/// otherwise. Always returns the best iterate; `converged` reports whether
/// dist - lower <= tol was reached.
BandNearnessResult band_nearness(const CMatrix& t, const Pattern& pattern,
                                 int iters, double tol,
                                 std::optional<double> lower = std::nullopt);

}  // namespace coarse
