#include "coarse/space_gen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "coarse/error.hpp"

namespace coarse {
namespace {

void expect(bool ok, const std::string& msg) {
  if (!ok) throw Error("invalid_params", msg);
}

std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

ExtMetricSpace path(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return ExtMetricSpace::from_edges(numbered(n), edges);
}

ExtMetricSpace cycle(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  if (n > 2) edges.push_back({n - 1, 0, 1.0});
  return ExtMetricSpace::from_edges(numbered(n), edges);
}

ExtMetricSpace grid2d(int w, int h) {
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      labels.push_back(std::to_string(c) + "," + std::to_string(r));
      const int id = r * w + c;
      if (c + 1 < w) edges.push_back({id, id + 1, 1.0});
      if (r + 1 < h) edges.push_back({id, id + w, 1.0});
    }
  return ExtMetricSpace::from_edges(std::move(labels), edges);
}

std::string cluster_label(int cluster, int member) {
  if (cluster == 1) return "1";
  std::string suffix;
  if (member < 26) {
    suffix = std::string(1, static_cast<char>('a' + member));
  } else {
    suffix = "_" + std::to_string(member);
  }
  return std::to_string(cluster) + suffix;
}

ExtMetricSpace cluster_space(int n) {
  std::vector<std::string> labels;
  std::vector<int> cluster_of;
  for (int c = 1; c <= n; ++c)
    for (int k = 0; k < c; ++k) {
      labels.push_back(cluster_label(c, k));
      cluster_of.push_back(c);
    }
  const std::size_t size = labels.size();
  std::vector<double> dist(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      if (i == j) continue;
      const int ci = cluster_of[i], cj = cluster_of[j];
      dist[i * size + j] = ci == cj ? 1.0 : static_cast<double>(std::abs(ci - cj));
    }
  return ExtMetricSpace::from_distances(std::move(labels), std::move(dist));
}

ExtMetricSpace disjoint_cliques(const std::vector<int>& sizes) {
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  int base = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    for (int k = 0; k < sizes[c]; ++k) {
      labels.push_back("G" + std::to_string(c) + "." + std::to_string(k));
      for (int j = 0; j < k; ++j) edges.push_back({base + j, base + k, 1.0});
    }
    base += sizes[c];
  }
  return ExtMetricSpace::from_edges(std::move(labels), edges);
}

ExtMetricSpace random_regular(int n, int degree, std::uint64_t seed) {
  expect(degree >= 0 && degree < n, "random_regular needs 0 <= degree < n");
  expect((static_cast<long>(n) * degree) % 2 == 0, "random_regular needs n * degree even");
  std::mt19937_64 rng(seed);
  // Configuration model with rejection of loops and multi-edges.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < degree; ++k) stubs.push_back(v);
    // Fisher-Yates with explicit draws so the result does not depend on the
    // standard library's shuffle.
    for (std::size_t i = stubs.size(); i > 1; --i) {
      const std::size_t j = rng() % i;
      std::swap(stubs[i - 1], stubs[j]);
    }
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b) { ok = false; break; }
      if (a > b) std::swap(a, b);
      if (!seen.insert({a, b}).second) { ok = false; break; }
      edges.push_back({a, b, 1.0});
    }
    if (ok) return ExtMetricSpace::from_edges(numbered(n), edges);
  }
  throw Error("generation_failed", "random_regular: no simple graph after 10000 draws");
}

}  // namespace

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "path") return SpaceKind::path;
  if (name == "cycle") return SpaceKind::cycle;
  if (name == "grid2d") return SpaceKind::grid2d;
  if (name == "disjoint_points") return SpaceKind::disjoint_points;
  if (name == "cluster_space") return SpaceKind::cluster_space;
  if (name == "disjoint_cliques") return SpaceKind::disjoint_cliques;
  if (name == "random_regular") return SpaceKind::random_regular;
  throw Error("invalid_params", "unknown space kind '" + name + "'");
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::path: return "path";
    case SpaceKind::cycle: return "cycle";
    case SpaceKind::grid2d: return "grid2d";
    case SpaceKind::disjoint_points: return "disjoint_points";
    case SpaceKind::cluster_space: return "cluster_space";
    case SpaceKind::disjoint_cliques: return "disjoint_cliques";
    case SpaceKind::random_regular: return "random_regular";
  }
  return "unknown";
}

ExtMetricSpace gen(SpaceKind kind, const std::vector<int>& params, std::uint64_t seed) {
  for (int p : params) expect(p >= 1 || kind == SpaceKind::random_regular,
                              "sizes must be >= 1");
  switch (kind) {
    case SpaceKind::path:
      expect(params.size() == 1, "path takes one size");
      return path(params[0]);
    case SpaceKind::cycle:
      expect(params.size() == 1, "cycle takes one size");
      return cycle(params[0]);
    case SpaceKind::grid2d:
      expect(params.size() == 2, "grid2d takes width and height");
      return grid2d(params[0], params[1]);
    case SpaceKind::disjoint_points:
      expect(params.size() == 1, "disjoint_points takes one size");
      return ExtMetricSpace::from_edges(numbered(params[0]), {});
    case SpaceKind::cluster_space:
      expect(params.size() == 1, "cluster_space takes the number of clusters");
      return cluster_space(params[0]);
    case SpaceKind::disjoint_cliques:
      expect(!params.empty(), "disjoint_cliques takes one or more clique sizes");
      return disjoint_cliques(params);
    case SpaceKind::random_regular:
      expect(params.size() == 2 && params[0] >= 1, "random_regular takes n and degree");
      return random_regular(params[0], params[1], seed);
  }
  throw Error("invalid_params", "unknown space kind");
}

}  // namespace coarse
