#include "coarse/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarse/error.hpp"

namespace coarse {
namespace {

// Relative slack for the triangle check on float metrics.
constexpr double kTriangleSlack = 1e-9;

std::string pair_str(const std::vector<std::string>& labels, int x, int y) {
  std::ostringstream os;
  os << "(" << labels[x] << ", " << labels[y] << ")";
  return os.str();
}

}  // namespace

ExtMetricSpace::ExtMetricSpace(std::vector<std::string> labels,
                               std::vector<double> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const int n = static_cast<int>(labels_.size());
  if (dist_.size() != labels_.size() * labels_.size())
    throw Error("invalid_metric", "distance matrix is not n x n");

  for (int x = 0; x < n; ++x) {
    if (d(x, x) != 0.0)
      throw Error("invalid_metric",
                  "nonzero self-distance at " + labels_[x]);
    for (int y = 0; y < n; ++y) {
      const double v = d(x, y);
      if (std::isnan(v) || v < 0.0)
        throw Error("invalid_metric",
                    "negative or NaN distance at " + pair_str(labels_, x, y));
      if (v != d(y, x))
        throw Error("invalid_metric",
                    "asymmetric distance at " + pair_str(labels_, x, y));
    }
  }

  component_.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (component_[s] >= 0) continue;
    for (int y = 0; y < n; ++y)
      if (std::isfinite(d(s, y))) component_[y] = component_count_;
    ++component_count_;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((component_[x] == component_[y]) != std::isfinite(d(x, y)))
        throw Error("invalid_metric",
                    "finite-distance classes are not transitive at " +
                        pair_str(labels_, x, y));

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!std::isfinite(d(x, y))) continue;
      for (int z = 0; z < n; ++z) {
        const double via = d(x, z) + d(z, y);
        if (d(x, y) > via + kTriangleSlack * std::max(1.0, via))
          throw Error("invalid_metric", "triangle inequality fails at " +
                                            pair_str(labels_, x, y) +
                                            " via " + labels_[z]);
      }
    }
}

ExtMetricSpace ExtMetricSpace::from_distances(std::vector<std::string> labels,
                                              std::vector<double> dist) {
  return ExtMetricSpace(std::move(labels), std::move(dist));
}

ExtMetricSpace ExtMetricSpace::from_edges(std::vector<std::string> labels,
                                          std::span<const WeightedEdge> edges) {
  const std::size_t n = labels.size();
  std::vector<double> dist(n * n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0.0;
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= n ||
        static_cast<std::size_t>(e.b) >= n)
      throw Error("invalid_metric", "edge references a missing point");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw Error("invalid_metric", "edge weight must be finite and >= 0");
    auto& ab = dist[e.a * n + e.b];
    ab = std::min(ab, e.weight);
    dist[e.b * n + e.a] = ab;
  }
  // Floyd-Warshall; n is desk-sized.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double ik = dist[i * n + k];
      if (!std::isfinite(ik)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double cand = ik + dist[k * n + j];
        if (cand < dist[i * n + j]) dist[i * n + j] = cand;
      }
    }
  return ExtMetricSpace(std::move(labels), std::move(dist));
}

PointSet ExtMetricSpace::component_points(int c) const {
  PointSet out;
  for (int x = 0; x < static_cast<int>(size()); ++x)
    if (component_[x] == c) out.push_back(x);
  return out;
}

PointSet ExtMetricSpace::ball(int x, Radius r) const {
  PointSet out;
  for (int y = 0; y < static_cast<int>(size()); ++y)
    if (d(x, y) <= r) out.push_back(y);
  return out;
}

PointSet ExtMetricSpace::neighborhood(std::span<const int> set,
                                      Radius r) const {
  PointSet out;
  for (int y = 0; y < static_cast<int>(size()); ++y)
    if (distance_to(y, set) <= r) out.push_back(y);
  return out;
}

Radius ExtMetricSpace::distance_to(int x, std::span<const int> set) const {
  Radius best = kInfinity;
  for (int a : set) best = std::min(best, d(x, a));
  return best;
}

Radius ExtMetricSpace::diameter(std::span<const int> set) const {
  Radius out = 0.0;
  for (int a : set)
    for (int b : set) out = std::max(out, d(a, b));
  return out;
}

Radius ExtMetricSpace::diameter() const {
  Radius out = 0.0;
  for (double v : dist_) out = std::max(out, v);
  return out;
}

std::vector<double> ExtMetricSpace::realized_distances() const {
  std::vector<double> out{0.0};
  for (double v : dist_)
    if (std::isfinite(v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PointSet ExtMetricSpace::all_points() const {
  PointSet out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

}  // namespace coarse
