#include "coarse/coarse_map.hpp"

#include <algorithm>
#include <cmath>

#include "coarse/error.hpp"

namespace coarse {

CoarseMapRep CoarseMapRep::from_relation(Relation rel) {
  const Radius fd = coarse::fiber_diameter(rel);
  const Radius cover = covering_radius(rel.domain(), *rel.source());
  return CoarseMapRep{std::move(rel), fd, cover};
}

CoarseMapRep CoarseMapRep::from_function(const SpacePtr& source,
                                         const SpacePtr& target,
                                         std::span<const int> map) {
  return from_relation(graph(source, target, map));
}

CoarseMapRep compose_coarse_maps(const CoarseMapRep& f, const CoarseMapRep& g) {
  if (!same_space(f.relation.target(), g.relation.source()))
    throw Error("space_mismatch", "compose_coarse_maps: target(f) != source(g)");
  const PointSet dom_g = g.relation.domain();
  const ExtMetricSpace& Y = *f.relation.target();
  Radius gap = 0.0;
  for (int y : f.relation.image()) gap = std::max(gap, Y.distance_to(y, dom_g));
  if (!std::isfinite(gap))
    throw Error("composition_undefined",
                "image of f is not within finite distance of the domain of g");
  Relation rel = gap > 0.0
                     ? compose(g.relation,
                               compose(entourage_at(f.relation.target(), gap),
                                       f.relation))
                     : compose(g.relation, f.relation);
  return CoarseMapRep::from_relation(std::move(rel));
}

InverseReport transpose_inverse_check(const CoarseMapRep& f) {
  const Relation& rel = f.relation;
  const Relation op = transpose(rel);
  const auto rx = rel.source()->realized_distances();
  const auto ry = rel.target()->realized_distances();

  InverseReport out;
  out.expansion = 0.0;
  for (const auto& s : expansion_profile(rel, rx).samples)
    out.expansion = std::max(out.expansion, s.value);
  out.op_expansion = 0.0;
  for (const auto& s : expansion_profile(op, ry).samples)
    out.op_expansion = std::max(out.op_expansion, s.value);
  out.embedding = std::isfinite(out.expansion) && std::isfinite(out.op_expansion);

  out.gap_x = closeness_gap(compose(op, rel), diagonal(rel.source()));
  out.gap_y = closeness_gap(compose(rel, op), diagonal(rel.target()));
  return out;
}

}  // namespace coarse
