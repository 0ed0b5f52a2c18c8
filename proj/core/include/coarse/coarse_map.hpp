#pragma once

#include "coarse/relation.hpp"

namespace coarse {

/// A coarse map carried by a concrete relation plus the gaps that witness how
/// far it is from a total function.
struct CoarseMapRep {
  Relation relation;
  /// Max over x of diam R(x).
  Radius fiber_diameter = 0.0;
  /// covering_radius(pi_X(R), source).
  Radius domain_covering_radius = 0.0;

  static CoarseMapRep from_relation(Relation rel);
  /// Total function x -> map[x].
  static CoarseMapRep from_function(const SpacePtr& source,
                                    const SpacePtr& target,
                                    std::span<const int> map);
};

/// g o f. Requires image(f) to lie within finite distance of dom(g); when
/// the gap s is positive the composition is routed through E_s so every
/// point of dom(f) survives. Throws Error("composition_undefined").
CoarseMapRep compose_coarse_maps(const CoarseMapRep& f, const CoarseMapRep& g);

struct InverseReport {
  /// closeness_gap(op f o f, diag X)
  Radius gap_x = kInfinity;
  /// closeness_gap(f o op f, diag Y)
  Radius gap_y = kInfinity;
  /// max over realized radii of expansion of f and op f
  Radius expansion = kInfinity;
  Radius op_expansion = kInfinity;
  /// f and op f are both controlled at every realized radius.
  bool embedding = false;
};

InverseReport transpose_inverse_check(const CoarseMapRep& f);

}  // namespace coarse
