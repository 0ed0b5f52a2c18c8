#include "coarse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coarse/error.hpp"

namespace coarse {
namespace {

constexpr int kMaxSweeps = 80;
constexpr int kMaxPowerIterations = 20000;

CVector column(const CMatrix& m, std::size_t j) {
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

// Tall-or-square case: rows >= cols. `a` is M V for a unitary V whose
// rotations are accumulated; V = I for a cold start.
Svd jacobi_tall(CMatrix a, CMatrix v) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<double> sq(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t j = 0; j < n; ++j) {
      sq[j] = 0.0;
      for (std::size_t i = 0; i < m; ++i) sq[j] += std::norm(a(i, j));
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = sq[p], beta = sq[q];
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) gamma += std::conj(a(i, p)) * a(i, q);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex ap = a(i, p);
          const Complex bq = a(i, q) * phase;
          a(i, p) = c * ap - s * bq;
          a(i, q) = s * ap + c * bq;
        }
        sq[p] = std::max(0.0, alpha - t * g);
        sq[q] = beta + t * g;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p);
          const Complex vq = v(i, q) * phase;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) sig[j] = norm(column(a, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  Svd out;
  out.sigma.resize(n);
  out.u = CMatrix(m, n);
  out.v = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sig[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (sig[j] > 0.0)
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = a(i, j) / sig[j];
  }
  return out;
}

CVector seed_vector(std::size_t n) {
  // All-ones, normalised, with index-dependent phases.
  CVector v(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    v[j] = std::polar(scale, 0.61803398874989485 * static_cast<double>(j + 1));
  return v;
}

struct PowerResult {
  double sigma = 0.0;
  double residual = 0.0;
  int iterations = 0;
  CVector v;  // right singular vector of the oriented matrix
};

// Power iteration on m^H m. Caller orients m so that cols <= rows.
PowerResult power_iterate(const CMatrix& m, double tol) {
  PowerResult out;
  CVector v = seed_vector(m.cols());
  for (int k = 1; k <= kMaxPowerIterations; ++k) {
    const CVector w = m.apply(v);
    const CVector z = m.apply_adjoint(w);
    const double theta = std::pow(norm(w), 2);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(z[i] - theta * v[i]);
    res = std::sqrt(res);
    const double zn = norm(z);
    out.iterations = k;
    out.sigma = std::sqrt(theta);
    out.residual = out.sigma > 0.0 ? res / out.sigma : 0.0;
    out.v = v;
    if (zn == 0.0 || out.residual <= tol) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = z[i] / zn;
  }
  return out;
}

Svd jacobi_tall(const CMatrix& a) { return jacobi_tall(a, CMatrix::identity(a.cols())); }

// Top singular triple of successive, slowly changing matrices: each call
// restarts Jacobi from the previous right singular basis, so only a sweep or
// two is needed.
class WarmTopPair {
 public:
  explicit WarmTopPair(const CMatrix& shape)
      : wide_(shape.rows() < shape.cols()),
        basis_(CMatrix::identity(std::min(shape.rows(), shape.cols()))) {}

  SingularPair operator()(const CMatrix& m) {
    const CMatrix oriented = wide_ ? m.adjoint() : m;
    Svd svd = jacobi_tall(oriented * basis_, basis_);
    basis_ = svd.v;
    SingularPair out;
    out.sigma = svd.sigma.front();
    CVector left(oriented.rows()), right(oriented.cols());
    for (std::size_t i = 0; i < left.size(); ++i) left[i] = svd.u(i, 0);
    for (std::size_t i = 0; i < right.size(); ++i) right[i] = svd.v(i, 0);
    out.u = wide_ ? std::move(right) : std::move(left);
    out.v = wide_ ? std::move(left) : std::move(right);
    return out;
  }

 private:
  bool wide_;
  CMatrix basis_;
};

}  // namespace

Svd jacobi_svd(const CMatrix& m) {
  if (m.rows() >= m.cols()) return jacobi_tall(m);
  Svd t = jacobi_tall(m.adjoint());
  std::swap(t.u, t.v);
  return t;
}

std::vector<double> singular_values(const CMatrix& m) {
  if (m.empty()) return {};
  return jacobi_svd(m).sigma;
}

NormEstimate op_norm(const CMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error("invalid_tolerance", "op_norm needs tol > 0");
  if (m.empty() || m.is_zero()) return {0.0, 0.0, 0};
  if (std::min(m.rows(), m.cols()) <= kExactSvdLimit)
    return {jacobi_svd(m).sigma.front(), 0.0, 0};
  const PowerResult p =
      m.cols() <= m.rows() ? power_iterate(m, tol) : power_iterate(m.adjoint(), tol);
  return {p.sigma, p.residual, p.iterations};
}

SingularPair top_singular_pair(const CMatrix& m, double tol) {
  if (m.empty() || m.is_zero())
    throw Error("zero_matrix", "top_singular_pair of a zero matrix");
  if (std::min(m.rows(), m.cols()) <= kExactSvdLimit) {
    const Svd s = jacobi_svd(m);
    SingularPair out;
    out.sigma = s.sigma.front();
    out.u.resize(m.rows());
    out.v.resize(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) out.u[i] = s.u(i, 0);
    for (std::size_t i = 0; i < m.cols(); ++i) out.v[i] = s.v(i, 0);
    return out;
  }
  const bool tall = m.cols() <= m.rows();
  const CMatrix oriented = tall ? m : m.adjoint();
  PowerResult p = power_iterate(oriented, tol);
  CVector v = p.v;
  const double vn = norm(v);
  for (auto& z : v) z /= vn;
  CVector u = oriented.apply(v);
  const double sigma = norm(u);
  for (auto& z : u) z /= sigma;
  SingularPair out;
  out.sigma = sigma;
  if (tall) {
    out.u = std::move(u);
    out.v = std::move(v);
  } else {
    out.u = std::move(v);
    out.v = std::move(u);
  }
  return out;
}

BandNearnessResult band_nearness(const CMatrix& t, const Pattern& pattern,
                                 int iters, double tol,
                                 std::optional<double> lower) {
  if (pattern.size() != t.rows() * t.cols())
    throw Error("dimension_mismatch", "pattern shape differs from the operator");
  const std::size_t rows = t.rows();
  const std::size_t cols = t.cols();
  const double floor = lower.value_or(0.0);

  CMatrix s(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (pattern[i * cols + j]) s(i, j) = t(i, j);

  const double norm_tol = std::max(tol * 1e-3, 1e-14);
  BandNearnessResult best;
  best.lower = floor;
  best.s = s;
  best.dist = op_norm(t - s, norm_tol).value;
  const double step_scale = best.dist;
  if (best.dist - floor <= tol) {
    best.converged = true;
    return best;
  }

  std::optional<WarmTopPair> warm;
  if (std::min(rows, cols) <= kExactSvdLimit) warm.emplace(t);

  for (int k = 1; k <= iters; ++k) {
    const CMatrix residual = t - s;
    if (residual.is_zero()) {
      best.s = s;
      best.dist = 0.0;
      best.converged = true;
      best.iterations = k;
      return best;
    }
    const SingularPair top = warm ? (*warm)(residual) : top_singular_pair(residual, norm_tol);
    if (top.sigma < best.dist) {
      best.dist = top.sigma;
      best.s = s;
    }
    best.iterations = k;
    if (best.dist - floor <= tol) {
      best.converged = true;
      return best;
    }
    // d sigma / dS = -P(u v^*); descend by adding P(u v^*).
    CMatrix g(rows, cols);
    double gnorm2 = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (pattern[i * cols + j]) {
          g(i, j) = top.u[i] * std::conj(top.v[j]);
          gnorm2 += std::norm(g(i, j));
        }
    if (gnorm2 == 0.0) {
      // Zero projected subgradient: no feasible descent direction remains.
      best.converged = !lower.has_value() || best.dist - floor <= tol;
      return best;
    }
    const double diminishing = 0.5 * step_scale / std::sqrt(static_cast<double>(k));
    const double step = lower.has_value()
                            ? std::min((top.sigma - floor) / gnorm2, diminishing)
                            : diminishing;
    g *= step;
    s += g;
  }
  best.converged = best.dist - floor <= tol;
  return best;
}

}  // namespace coarse
