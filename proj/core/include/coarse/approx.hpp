#pragma once

#include <string>
#include <vector>

#include "coarse/coarse_map.hpp"
#include "coarse/module.hpp"

namespace coarse {

enum class BoundedMode { balls, maximal_cliques, all_subsets };

std::string to_string(BoundedMode mode);
BoundedMode bounded_mode_from_string(const std::string& name);

/// Largest space on which all_subsets enumeration runs.
inline constexpr std::size_t kAllSubsetsLimit = 16;

struct ApproxParams {
  double delta = 0.5;
  /// Source-side bound (diam A <= r).
  Radius r = 0.0;
  /// Target-side bound (diam B <= R).
  Radius R = 0.0;
  BoundedMode mode = BoundedMode::maximal_cliques;
};

/// Candidate bounded sets of a space with diameter <= bound, per mode:
/// closed balls of radius bound/2, maximal bounded sets (Bron-Kerbosch on the
/// threshold graph), or every nonempty bounded subset. Sorted.
std::vector<PointSet> bounded_sets(const ExtMetricSpace& space, Radius bound,
                                   BoundedMode mode);

/// Phi_delta[T]: union of B x A over candidate bounded products with
/// ||χ_B T χ_A|| > delta.
Relation approx_relation(const ModuleOperator& t, const ApproxParams& params);

/// Picks a centre of each fibre (least eccentricity, then least index);
/// records the fibre diameter of `rel` as the well-definedness gap.
CoarseMapRep relation_to_map(const Relation& rel);

/// op(Phi_delta[T]) == Phi_delta[T^*] with r and R exchanged.
bool adjoint_duality_check(const ModuleOperator& t, const ApproxParams& params);

}  // namespace coarse
