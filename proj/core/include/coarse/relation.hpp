#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coarse/metric_space.hpp"
#include "coarse/profile.hpp"

namespace coarse {

/// Subset of target x source. Pairs are stored as (target point, source point)
/// in a dense bitmap, which is the natural shape at desk scale.
class Relation {
 public:
  Relation(SpacePtr source, SpacePtr target);

  static Relation from_pairs(SpacePtr source, SpacePtr target,
                             std::span<const std::pair<int, int>> pairs);

  const SpacePtr& source() const noexcept { return source_; }
  const SpacePtr& target() const noexcept { return target_; }
  int source_size() const noexcept { return nx_; }
  int target_size() const noexcept { return ny_; }

  void insert(int y, int x);
  bool contains(int y, int x) const {
    return mask_[static_cast<std::size_t>(y) * nx_ + x] != 0;
  }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Sorted (y, x) pairs.
  std::vector<std::pair<int, int>> pairs() const;
  /// R(x): targets related to source point x.
  PointSet fiber(int x) const;
  /// op R(y): sources related to target point y.
  PointSet preimage(int y) const;
  /// pi_X(R) and pi_Y(R).
  PointSet domain() const;
  PointSet image() const;

  /// Set union; spaces must agree.
  Relation& operator|=(const Relation& other);
  bool subset_of(const Relation& other) const;

  bool operator==(const Relation& other) const {
    return same_space(source_, other.source_) &&
           same_space(target_, other.target_) && mask_ == other.mask_;
  }

 private:
  SpacePtr source_;
  SpacePtr target_;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint8_t> mask_;
};

Relation diagonal(const SpacePtr& space);

/// E_r = {(y, x) : d(x, y) <= r}. The threshold is closed.
Relation entourage_at(const SpacePtr& space, Radius r);

/// Graph of a (partial) function; map[x] < 0 leaves x undefined.
Relation graph(const SpacePtr& source, const SpacePtr& target,
               std::span<const int> map);

/// r o s = {(z, x) : exists y with (z, y) in r and (y, x) in s}.
/// Throws Error("space_mismatch") unless source(r) == target(s).
Relation compose(const Relation& r, const Relation& s);
Relation transpose(const Relation& r);

/// rho_R(r) = sup{ d(y, y') : (y,x), (y',x') in R, d(x, x') <= r }.
Profile expansion_profile(const Relation& rel, std::span<const double> radii);

/// Least s with each relation inside the (E_s x E_s)-thickening of the other.
Radius closeness_gap(const Relation& a, const Relation& b);

/// Least s with every point of the space within s of `set`.
Radius covering_radius(std::span<const int> set, const ExtMetricSpace& space);

/// p(r) = max over r-bounded B of diam(op R(B)).
Profile properness_profile(const Relation& rel, std::span<const double> radii);

/// Max over x of diam R(x); 0 for the empty relation.
Radius fiber_diameter(const Relation& rel);

}  // namespace coarse
