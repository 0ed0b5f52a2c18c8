#include "coarse/approx.hpp"

#include <algorithm>
#include <cstdint>

#include "coarse/error.hpp"
#include "coarse/linalg.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

std::string to_string(BoundedMode mode) {
  switch (mode) {
    case BoundedMode::balls: return "balls";
    case BoundedMode::maximal_cliques: return "maximal_cliques";
    case BoundedMode::all_subsets: return "all_subsets";
  }
  return "unknown";
}

BoundedMode bounded_mode_from_string(const std::string& name) {
  if (name == "balls") return BoundedMode::balls;
  if (name == "maximal_cliques") return BoundedMode::maximal_cliques;
  if (name == "all_subsets") return BoundedMode::all_subsets;
  throw Error("invalid_params", "unknown bounded mode '" + name + "'");
}

namespace {

struct CliqueSearch {
  const std::vector<std::vector<char>>& adj;
  std::vector<PointSet>& out;

  void run(PointSet r, PointSet p, PointSet x) {
    if (p.empty() && x.empty()) {
      std::sort(r.begin(), r.end());
      out.push_back(std::move(r));
      return;
    }
    // Tomita pivot: the vertex of P u X with most neighbours in P.
    int pivot = -1;
    std::size_t best = 0;
    for (const PointSet* s : {&p, &x})
      for (int u : *s) {
        std::size_t cnt = 0;
        for (int v : p) cnt += adj[u][v] ? 1 : 0;
        if (pivot < 0 || cnt > best) {
          pivot = u;
          best = cnt;
        }
      }
    PointSet candidates;
    for (int v : p)
      if (!adj[pivot][v]) candidates.push_back(v);
    for (int v : candidates) {
      PointSet r2 = r;
      r2.push_back(v);
      PointSet p2, x2;
      for (int w : p)
        if (adj[v][w]) p2.push_back(w);
      for (int w : x)
        if (adj[v][w]) x2.push_back(w);
      run(std::move(r2), std::move(p2), std::move(x2));
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }
};

std::vector<PointSet> maximal_bounded_sets(const ExtMetricSpace& space, Radius bound) {
  const int n = static_cast<int>(space.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) adj[a][b] = (a != b && space.d(a, b) <= bound) ? 1 : 0;
  std::vector<PointSet> out;
  CliqueSearch search{adj, out};
  search.run({}, space.all_points(), {});
  return out;
}

std::vector<PointSet> all_bounded_subsets(const ExtMetricSpace& space, Radius bound) {
  const std::size_t n = space.size();
  if (n > kAllSubsetsLimit)
    throw Error("size_limit", "all_subsets enumeration is capped at " +
                                  std::to_string(kAllSubsetsLimit) + " points");
  std::vector<std::uint32_t> close(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (space.d(static_cast<int>(a), static_cast<int>(b)) <= bound) close[a] |= 1u << b;
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<char> bounded(subsets, 0);
  bounded[0] = 1;
  std::vector<PointSet> out;
  for (std::size_t m = 1; m < subsets; ++m) {
    const int low = __builtin_ctz(static_cast<unsigned>(m));
    const std::uint32_t rest = static_cast<std::uint32_t>(m & (m - 1));
    bounded[m] = bounded[rest] && (close[low] & rest) == rest;
    if (!bounded[m]) continue;
    PointSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (m & (std::size_t{1} << i)) s.push_back(static_cast<int>(i));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<PointSet> bounded_sets(const ExtMetricSpace& space, Radius bound,
                                   BoundedMode mode) {
  if (!(bound >= 0.0)) throw Error("invalid_params", "bounded-set radius must be >= 0");
  std::vector<PointSet> out;
  switch (mode) {
    case BoundedMode::balls:
      for (int x = 0; x < static_cast<int>(space.size()); ++x)
        out.push_back(space.ball(x, bound / 2.0));
      break;
    case BoundedMode::maximal_cliques:
      out = maximal_bounded_sets(space, bound);
      break;
    case BoundedMode::all_subsets:
      out = all_bounded_subsets(space, bound);
      break;
  }
  std::erase_if(out, [](const PointSet& s) { return s.empty(); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Relation approx_relation(const ModuleOperator& t, const ApproxParams& params) {
  if (!(params.delta > 0.0)) throw Error("invalid_params", "delta must be > 0");
  if (!(params.r >= 0.0) || !(params.R >= 0.0))
    throw Error("invalid_params", "bounded-set radii must be >= 0");
  const ExtMetricSpace& X = t.source()->space();
  const ExtMetricSpace& Y = t.target()->space();
  const auto sources = bounded_sets(X, params.r, params.mode);
  const auto targets = bounded_sets(Y, params.R, params.mode);

  std::vector<Relation> partial(sources.size(),
                                Relation(t.source()->space_ptr(), t.target()->space_ptr()));
  parallel_for(sources.size(), [&](std::size_t i) {
    const PointSet& a = sources[i];
    Relation& local = partial[i];
    for (const PointSet& b : targets) {
      bool covered = true;
      for (int y : b) {
        for (int x : a)
          if (!local.contains(y, x)) {
            covered = false;
            break;
          }
        if (!covered) break;
      }
      if (covered) continue;
      const CMatrix c = t.cut(b, a);
      if (c.empty()) continue;
      if (op_norm(c, 1e-13).value > params.delta)
        for (int y : b)
          for (int x : a) local.insert(y, x);
    }
  });

  Relation out(t.source()->space_ptr(), t.target()->space_ptr());
  for (const auto& p : partial) out |= p;
  return out;
}

CoarseMapRep relation_to_map(const Relation& rel) {
  Relation fn(rel.source(), rel.target());
  const ExtMetricSpace& Y = *rel.target();
  for (int x = 0; x < rel.source_size(); ++x) {
    const PointSet f = rel.fiber(x);
    if (f.empty()) continue;
    // Centre of the fibre (least eccentricity), least index on ties.
    int best = f.front();
    Radius best_ecc = kInfinity;
    bool first = true;
    for (int y : f) {
      Radius ecc = 0.0;
      for (int z : f) ecc = std::max(ecc, Y.d(y, z));
      if (first || ecc < best_ecc) best = y, best_ecc = ecc, first = false;
    }
    fn.insert(best, x);
  }
  return CoarseMapRep{std::move(fn), fiber_diameter(rel),
                      covering_radius(rel.domain(), *rel.source())};
}

bool adjoint_duality_check(const ModuleOperator& t, const ApproxParams& params) {
  ApproxParams swapped = params;
  std::swap(swapped.r, swapped.R);
  return transpose(approx_relation(t, params)) == approx_relation(t.adjoint(), swapped);
}

}  // namespace coarse
