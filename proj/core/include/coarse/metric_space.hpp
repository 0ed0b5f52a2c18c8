#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace coarse {

/// Distances and radii. +infinity is the sentinel for "different components";
/// IEEE arithmetic saturates on it and orders it above every finite value.
using Radius = double;
inline constexpr Radius kInfinity = std::numeric_limits<double>::infinity();

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<int>;

struct WeightedEdge {
  int a = 0;
  int b = 0;
  double weight = 1.0;
};

/// Finite extended metric space. Immutable once built.
class ExtMetricSpace {
 public:
  /// `dist` is row-major n*n. Throws coarse::Error("invalid_metric") if the
  /// matrix violates symmetry, zero diagonal, nonnegativity, or the triangle
  /// inequality within a component.
  static ExtMetricSpace from_distances(std::vector<std::string> labels,
                                       std::vector<double> dist);

  /// Shortest-path metric of a weighted undirected graph; unreachable pairs
  /// are at infinite distance.
  static ExtMetricSpace from_edges(std::vector<std::string> labels,
                                   std::span<const WeightedEdge> edges);

  std::size_t size() const noexcept { return labels_.size(); }
  double d(int x, int y) const { return dist_[index(x, y)]; }
  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& distances() const noexcept { return dist_; }

  int component(int x) const { return component_[x]; }
  int component_count() const noexcept { return component_count_; }
  PointSet component_points(int c) const;

  /// Closed ball {y : d(x,y) <= r}.
  PointSet ball(int x, Radius r) const;
  /// Closed r-neighbourhood of a set.
  PointSet neighborhood(std::span<const int> set, Radius r) const;
  /// Minimum distance from x to a set (+inf for an empty set).
  Radius distance_to(int x, std::span<const int> set) const;
  Radius diameter(std::span<const int> set) const;
  Radius diameter() const;
  /// Sorted distinct finite distances, always starting at 0.
  std::vector<double> realized_distances() const;
  PointSet all_points() const;

  bool operator==(const ExtMetricSpace& other) const {
    return labels_ == other.labels_ && dist_ == other.dist_;
  }

 private:
  ExtMetricSpace(std::vector<std::string> labels, std::vector<double> dist);
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * labels_.size() +
           static_cast<std::size_t>(y);
  }

  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::vector<int> component_;
  int component_count_ = 0;
};

using SpacePtr = std::shared_ptr<const ExtMetricSpace>;

inline SpacePtr share(ExtMetricSpace space) {
  return std::make_shared<const ExtMetricSpace>(std::move(space));
}

/// Identity of spaces: same object or structurally equal.
inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace coarse
