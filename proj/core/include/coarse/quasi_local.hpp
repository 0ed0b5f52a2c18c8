#pragma once

#include <optional>
#include <span>

#include "coarse/linalg.hpp"
#include "coarse/module.hpp"
#include "coarse/profile.hpp"

namespace coarse {

/// Largest space on which ql_value enumerates every target subset.
inline constexpr std::size_t kExactQlLimit = 20;

enum class QlMode { exact, bounds };

struct QlResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  Exactness exactness = Exactness::exact;
};

/// ql(T, r) = max over B of ||χ_B T χ_{X \ N_r(B)}||.
/// Exact mode enumerates B (up to kExactQlLimit points, else Error
/// "size_limit"); bounds mode reports a certified bracket whose lower end
/// comes from singleton and component-half B and whose upper end is
/// ||T_gt|| from far_truncation.
QlResult ql_value(const ModuleOperator& t, Radius r, QlMode mode);

struct AppParams {
  int iters = 400;
  double tol = 1e-9;
};

struct AppResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  CMatrix s;
  bool converged = false;
  Exactness exactness = Exactness::exact;
};

/// Distance from T to operators of propagation <= r. The ql value is the
/// certified lower end and the far truncation the starting feasible point.
AppResult app_value(const ModuleOperator& t, Radius r, const AppParams& params = {});

/// Entry mask of blocks at distance <= r.
Pattern propagation_pattern(const ModuleOperator& t, Radius r);

/// app_value over a radius grid, with certificates carried to larger radii
/// and lower bounds to smaller ones so the curve is monotone.
std::vector<AppResult> app_values(const ModuleOperator& t, std::span<const double> radii,
                                  const AppParams& params = {});

Profile ql_profile(const ModuleOperator& t, std::span<const double> radii, QlMode mode);
Profile app_profile(const ModuleOperator& t, std::span<const double> radii,
                    const AppParams& params = {});

}  // namespace coarse
