#include "coarse/covering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

namespace coarse {
namespace {

std::string describe(const std::vector<Slot>& src, const std::vector<Slot>& tgt,
                     double spill) {
  std::ostringstream os;
  os << "no covering slot assignment at spill " << spill << ": " << src.size()
     << " source slots over points {";
  PointSet pts;
  for (auto [x, i] : src) pts.push_back(x);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t k = 0; k < pts.size(); ++k) os << (k ? "," : "") << pts[k];
  os << "} reach only " << tgt.size() << " target slots";
  return os.str();
}

PointSet slot_points(const std::vector<Slot>& slots) {
  PointSet out;
  for (auto [p, i] : slots) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

constexpr int kFree = -1;

// Bipartite graph between source slots (left) and target slots (right);
// adjacency lists are sorted ascending.
struct SlotGraph {
  std::vector<Slot> left;
  std::vector<Slot> right;
  std::vector<std::vector<int>> adj;
};

SlotGraph build_graph(const CoarseMapRep& f, const GeometricModule& src,
                      const GeometricModule& tgt, Radius spill) {
  SlotGraph g;
  const ExtMetricSpace& Y = tgt.space();
  for (int y = 0; y < static_cast<int>(tgt.point_count()); ++y)
    for (int j = 0; j < tgt.multiplicity(y); ++j) g.right.emplace_back(y, j);
  for (int x = 0; x < static_cast<int>(src.point_count()); ++x) {
    if (src.multiplicity(x) == 0) continue;
    const PointSet image = f.relation.fiber(x);
    if (image.empty())
      throw Error("map_not_total", "covering map is undefined at source point " +
                                       src.space().label(x));
    std::vector<int> nbrs;
    for (int k = 0; k < static_cast<int>(g.right.size()); ++k)
      if (Y.distance_to(g.right[k].first, image) <= spill) nbrs.push_back(k);
    for (int i = 0; i < src.multiplicity(x); ++i) {
      g.left.emplace_back(x, i);
      g.adj.push_back(nbrs);
    }
  }
  return g;
}

// Hopcroft-Karp maximum matching.
struct Matching {
  std::vector<int> of_left;
  std::vector<int> of_right;
  int size = 0;
};

Matching hopcroft_karp(const SlotGraph& g) {
  const int nl = static_cast<int>(g.left.size());
  const int nr = static_cast<int>(g.right.size());
  Matching m{std::vector<int>(nl, kFree), std::vector<int>(nr, kFree), 0};
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(nl);

  auto bfs = [&] {
    std::deque<int> q;
    bool found = false;
    for (int u = 0; u < nl; ++u) {
      if (m.of_left[u] == kFree) {
        dist[u] = 0;
        q.push_back(u);
      } else {
        dist[u] = inf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : g.adj[u]) {
        const int w = m.of_right[v];
        if (w == kFree) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          q.push_back(w);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (int v : g.adj[u]) {
      const int w = m.of_right[v];
      if (w == kFree || (dist[w] == dist[u] + 1 && dfs(w))) {
        m.of_left[u] = v;
        m.of_right[v] = u;
        return true;
      }
    }
    dist[u] = inf;
    return false;
  };

  while (bfs())
    for (int u = 0; u < nl; ++u)
      if (m.of_left[u] == kFree && dfs(u)) ++m.size;
  return m;
}

[[noreturn]] void throw_hall(const SlotGraph& g, const Matching& m, double spill) {
  int root = 0;
  while (m.of_left[root] != kFree) ++root;
  std::vector<char> seen_l(g.left.size(), 0), seen_r(g.right.size(), 0);
  std::deque<int> q{root};
  seen_l[root] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v : g.adj[u]) {
      if (seen_r[v]) continue;
      seen_r[v] = 1;
      const int w = m.of_right[v];
      if (w != kFree && !seen_l[w]) {
        seen_l[w] = 1;
        q.push_back(w);
      }
    }
  }
  std::vector<Slot> src, tgt;
  for (std::size_t u = 0; u < g.left.size(); ++u)
    if (seen_l[u]) src.push_back(g.left[u]);
  for (std::size_t v = 0; v < g.right.size(); ++v)
    if (seen_r[v]) tgt.push_back(g.right[v]);
  throw HallViolation(std::move(src), std::move(tgt), spill);
}

// Turns a source-saturating matching into the lexicographically least one:
// slot by slot, take the smallest target that still admits a completion of
// the remaining slots.
void make_lexicographic(const SlotGraph& g, Matching& m) {
  const int nl = static_cast<int>(g.left.size());
  const int nr = static_cast<int>(g.right.size());
  std::vector<char> fixed_left(nl, 0), fixed_right(nr, 0);

  for (int s = 0; s < nl; ++s) {
    const int current = m.of_left[s];
    for (int t : g.adj[s]) {
      if (t >= current) break;
      if (fixed_right[t]) continue;
      const int holder = m.of_right[t];
      if (holder == kFree) {
        m.of_right[current] = kFree;
        m.of_left[s] = t;
        m.of_right[t] = s;
        break;
      }
      // Re-home `holder` along an alternating path that avoids fixed slots
      // and t, ending at a free target or at s's current target.
      std::vector<int> parent_left(nl, -1), held(nl, -1);
      std::vector<char> seen_l(nl, 0), seen_r(nr, 0);
      seen_r[t] = 1;
      seen_l[holder] = 1;
      held[holder] = t;
      std::deque<int> q{holder};
      int end_left = -1, end_target = -1;
      while (!q.empty() && end_left < 0) {
        const int u = q.front();
        q.pop_front();
        for (int v : g.adj[u]) {
          if (seen_r[v] || fixed_right[v]) continue;
          seen_r[v] = 1;
          const int w = m.of_right[v];
          if (w == kFree || v == current) {
            end_left = u;
            end_target = v;
            break;
          }
          if (seen_l[w] || fixed_left[w]) continue;
          seen_l[w] = 1;
          parent_left[w] = u;
          held[w] = v;
          q.push_back(w);
        }
      }
      if (end_left < 0) continue;
      m.of_right[current] = kFree;
      for (int u = end_left, v = end_target;;) {
        const int released = held[u];
        m.of_left[u] = v;
        m.of_right[v] = u;
        if (u == holder) break;
        v = released;
        u = parent_left[u];
      }
      m.of_left[s] = t;
      m.of_right[t] = s;
      break;
    }
    fixed_left[s] = 1;
    fixed_right[m.of_left[s]] = 1;
  }
}

CoveringResult assign(const CoarseMapRep& f, const ModulePtr& source,
                      const ModulePtr& target, Radius spill) {
  const SlotGraph g = build_graph(f, *source, *target, spill);
  Matching m = hopcroft_karp(g);
  if (m.size < static_cast<int>(g.left.size())) throw_hall(g, m, spill);
  make_lexicographic(g, m);

  CMatrix u(target->dim(), source->dim());
  for (std::size_t k = 0; k < g.left.size(); ++k) {
    const auto [x, i] = g.left[k];
    const auto [y, j] = g.right[m.of_left[k]];
    u(target->offset(y) + j, source->offset(x) + i) = 1.0;
  }
  return {ModuleOperator(std::move(u), source, target), spill};
}

}  // namespace

HallViolation::HallViolation(std::vector<Slot> source_slots,
                             std::vector<Slot> target_slots, double spill)
    : Error("hall_violation", describe(source_slots, target_slots, spill)),
      source_slots_(std::move(source_slots)),
      target_slots_(std::move(target_slots)),
      spill_(spill) {}

PointSet HallViolation::source_points() const { return slot_points(source_slots_); }
PointSet HallViolation::target_points() const { return slot_points(target_slots_); }

CoveringResult build_covering_isometry(const CoarseMapRep& f, const ModulePtr& source,
                                       const ModulePtr& target,
                                       const CoveringOptions& options) {
  if (!same_space(f.relation.source(), source->space_ptr()) ||
      !same_space(f.relation.target(), target->space_ptr()))
    throw Error("space_mismatch", "covering map and modules live on different spaces");
  if (!(options.spill >= 0.0))
    throw Error("invalid_params", "spill must be >= 0");
  if (!options.auto_spill) return assign(f, source, target, options.spill);

  std::vector<double> candidates{options.spill};
  for (double d : target->space().realized_distances())
    if (d > options.spill) candidates.push_back(d);
  for (std::size_t k = 0;; ++k) {
    try {
      return assign(f, source, target, candidates[k]);
    } catch (const HallViolation&) {
      if (k + 1 == candidates.size()) throw;
    }
  }
}

CoveringResult build_covering_unitary(const CoarseMapRep& f, const ModulePtr& source,
                                      const ModulePtr& target,
                                      const CoveringOptions& options) {
  if (source->dim() != target->dim())
    throw Error("dimension_mismatch", "covering unitary needs equal total dimensions (" +
                                          std::to_string(source->dim()) + " vs " +
                                          std::to_string(target->dim()) + ")");
  const InverseReport inv = transpose_inverse_check(f);
  if (!std::isfinite(inv.gap_x) || !std::isfinite(inv.gap_y) || !inv.embedding)
    throw Error("not_coarse_equivalence",
                "covering unitary needs a map with finite transpose-inverse gaps");
  return build_covering_isometry(f, source, target, options);
}

double isometry_residual(const ModuleOperator& u) {
  const CMatrix g = u.matrix().adjoint() * u.matrix();
  return (g - CMatrix::identity(g.rows())).max_abs();
}

double unitary_residual(const ModuleOperator& u) {
  const CMatrix g = u.matrix() * u.matrix().adjoint();
  return std::max(isometry_residual(u), (g - CMatrix::identity(g.rows())).max_abs());
}

}  // namespace coarse
