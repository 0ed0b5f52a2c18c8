#include "coarse/quasi_local.hpp"

#include <algorithm>
#include <cstdint>

#include "coarse/error.hpp"
#include "coarse/linalg.hpp"
#include "coarse/parallel.hpp"

namespace coarse {
namespace {

constexpr double kNormTol = 1e-13;

PointSet points_of_mask(std::uint32_t mask) {
  PointSet out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

void require_same_space(const ModuleOperator& t) {
  if (!same_space(t.source()->space_ptr(), t.target()->space_ptr()))
    throw Error("space_mismatch", "quasi-locality needs one space on both sides");
}

double cut_norm(const ModuleOperator& t, const PointSet& b, const PointSet& a) {
  if (a.empty() || b.empty()) return 0.0;
  const CMatrix c = t.cut(b, a);
  if (c.empty()) return 0.0;
  return op_norm(c, kNormTol).value;
}

// For a B, the worst A is everything r-separated from B; for that A the
// largest admissible B is everything r-separated from A.
std::pair<PointSet, PointSet> closed_pair(const ExtMetricSpace& X, const PointSet& b,
                                          Radius r) {
  PointSet a;
  for (int x = 0; x < static_cast<int>(X.size()); ++x)
    if (X.distance_to(x, b) > r) a.push_back(x);
  PointSet bstar;
  for (int y = 0; y < static_cast<int>(X.size()); ++y)
    if (X.distance_to(y, a) > r) bstar.push_back(y);
  return {bstar, a};
}

double ql_exact(const ModuleOperator& t, Radius r) {
  const ExtMetricSpace& X = t.source()->space();
  const std::size_t n = X.size();
  if (n > kExactQlLimit)
    throw Error("size_limit", "exact ql enumeration is capped at " +
                                  std::to_string(kExactQlLimit) + " points");
  if (n == 0) return 0.0;
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);

  std::vector<std::uint32_t> near_of_point(n, 0);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (X.d(static_cast<int>(x), static_cast<int>(y)) <= r) near_of_point[y] |= 1u << x;

  // nbhd[B] = N_r(B) as a bitmask, built by peeling the lowest set bit.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::uint32_t> nbhd(subsets, 0);
  for (std::size_t b = 1; b < subsets; ++b) {
    const int low = __builtin_ctz(static_cast<unsigned>(b));
    nbhd[b] = nbhd[b & (b - 1)] | near_of_point[low];
  }

  std::vector<std::uint32_t> sources;
  sources.reserve(subsets);
  for (std::size_t b = 1; b < subsets; ++b) {
    const std::uint32_t a = full & ~nbhd[b];
    if (a != 0) sources.push_back(a);
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

  std::vector<double> values(sources.size(), 0.0);
  parallel_for(sources.size(), [&](std::size_t i) {
    const std::uint32_t a = sources[i];
    const std::uint32_t b = full & ~nbhd[a];
    values[i] = cut_norm(t, points_of_mask(b), points_of_mask(a));
  });
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

double ql_lower(const ModuleOperator& t, Radius r) {
  const ExtMetricSpace& X = t.source()->space();
  std::vector<PointSet> seeds;
  for (int y = 0; y < static_cast<int>(X.size()); ++y) seeds.push_back({y});
  for (int c = 0; c < X.component_count(); ++c) {
    PointSet pts = X.component_points(c);
    const int anchor = pts.front();
    std::stable_sort(pts.begin(), pts.end(),
                     [&](int a, int b) { return X.d(anchor, a) < X.d(anchor, b); });
    PointSet half(pts.begin(), pts.begin() + static_cast<long>((pts.size() + 1) / 2));
    std::sort(half.begin(), half.end());
    seeds.push_back(std::move(half));
  }
  std::vector<double> values(seeds.size(), 0.0);
  parallel_for(seeds.size(), [&](std::size_t i) {
    auto [b, a] = closed_pair(X, seeds[i], r);
    values[i] = cut_norm(t, b, a);
  });
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

}  // namespace

QlResult ql_value(const ModuleOperator& t, Radius r, QlMode mode) {
  require_same_space(t);
  QlResult out;
  if (mode == QlMode::exact) {
    out.value = out.lower = out.upper = ql_exact(t, r);
    out.exactness = Exactness::exact;
    return out;
  }
  out.lower = ql_lower(t, r);
  out.upper = op_norm(far_truncation(t, r).second.matrix(), kNormTol).value;
  out.value = out.lower;
  out.exactness = (out.upper - out.lower <= 1e-12 * std::max(1.0, out.upper))
                      ? Exactness::exact
                      : Exactness::lower_bound;
  return out;
}

Pattern propagation_pattern(const ModuleOperator& t, Radius r) {
  require_same_space(t);
  const ExtMetricSpace& X = t.source()->space();
  const std::size_t rows = t.matrix().rows();
  const std::size_t cols = t.matrix().cols();
  Pattern p(rows * cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const int y = t.target()->point_of(i);
    for (std::size_t j = 0; j < cols; ++j)
      p[i * cols + j] = X.d(t.source()->point_of(j), y) <= r ? 1 : 0;
  }
  return p;
}

AppResult app_value(const ModuleOperator& t, Radius r, const AppParams& params) {
  require_same_space(t);
  const bool small = t.target()->point_count() <= kExactQlLimit;
  const QlResult ql = ql_value(t, r, small ? QlMode::exact : QlMode::bounds);
  auto [near, far] = far_truncation(t, r);

  AppResult out;
  out.lower = ql.lower;
  out.upper = op_norm(far.matrix(), kNormTol).value;
  if (out.upper - out.lower <= params.tol) {
    out.value = out.upper;
    out.s = near.matrix();
    out.converged = true;
    out.exactness = Exactness::exact;
    return out;
  }
  BandNearnessResult bn = band_nearness(t.matrix(), propagation_pattern(t, r),
                                        params.iters, params.tol, out.lower);
  out.value = std::min(bn.dist, out.upper);
  out.s = bn.dist <= out.upper ? std::move(bn.s) : near.matrix();
  out.converged = bn.converged;
  out.exactness = bn.converged ? Exactness::exact : Exactness::upper_bound;
  return out;
}

Profile ql_profile(const ModuleOperator& t, std::span<const double> radii, QlMode mode) {
  Profile out{ProfileKind::ql, {}};
  for (double r : radii) {
    const QlResult q = ql_value(t, r, mode);
    out.samples.push_back({r, q.value, q.exactness});
  }
  return out;
}

std::vector<AppResult> app_values(const ModuleOperator& t, std::span<const double> radii,
                                  const AppParams& params) {
  std::vector<AppResult> res;
  res.reserve(radii.size());
  for (double r : radii) res.push_back(app_value(t, r, params));

  // A certificate for r stays feasible at every larger radius, and a lower
  // bound at r' bounds every smaller radius too.
  std::vector<std::size_t> order(radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    AppResult& cur = res[order[k]];
    const AppResult& prev = res[order[k - 1]];
    if (prev.value < cur.value) {
      cur.value = prev.value;
      cur.s = prev.s;
    }
  }
  for (std::size_t k = order.size(); k-- > 1;)
    res[order[k - 1]].lower = std::max(res[order[k - 1]].lower, res[order[k]].lower);
  for (AppResult& a : res) {
    a.upper = std::min(a.upper, a.value);
    if (a.value - a.lower <= params.tol) {
      a.converged = true;
      a.exactness = Exactness::exact;
    }
  }
  return res;
}

Profile app_profile(const ModuleOperator& t, std::span<const double> radii,
                    const AppParams& params) {
  Profile out{ProfileKind::app, {}};
  const auto res = app_values(t, radii, params);
  for (std::size_t i = 0; i < radii.size(); ++i)
    out.samples.push_back({radii[i], res[i].value, res[i].exactness});
  return out;
}

}  // namespace coarse
