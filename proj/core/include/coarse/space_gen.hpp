#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

enum class SpaceKind {
  path,
  cycle,
  grid2d,
  disjoint_points,
  cluster_space,
  disjoint_cliques,
  random_regular,
};

SpaceKind space_kind_from_string(const std::string& name);
std::string to_string(SpaceKind kind);

/// Deterministic example spaces with graph shortest-path metrics.
///   path(n), cycle(n), grid2d(w, h), disjoint_points(n): n points pairwise at
///   infinite distance, cluster_space(n): clusters of sizes 1..n, intra 1 and
///   inter |i - j|, disjoint_cliques(s1, s2, ...), random_regular(n, degree)
///   via a seeded configuration model.
ExtMetricSpace gen(SpaceKind kind, const std::vector<int>& params,
                   std::uint64_t seed = 0);

}  // namespace coarse
