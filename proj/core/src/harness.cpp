#include "coarse/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coarse/error.hpp"
#include "coarse/linalg.hpp"
#include "coarse/parallel.hpp"

namespace coarse {
namespace {

constexpr double kNormTol = 1e-13;

double cut_norm(const CMatrix& m) {
  if (m.empty()) return 0.0;
  return op_norm(m, kNormTol).value;
}

Radius gap_or_inf(const CoarseMapRep& f, const CoarseMapRep& g, const SpacePtr& space) {
  try {
    return closeness_gap(compose_coarse_maps(f, g).relation, diagonal(space));
  } catch (const Error& e) {
    if (e.code() == "composition_undefined") return kInfinity;
    throw;
  }
}

}  // namespace

RoundtripReport roundtrip(const CoarseMapRep& f, const ModulePtr& source,
                          const ModulePtr& target, const RoundtripOptions& options) {
  const CoveringResult cover =
      build_covering_unitary(f, source, target, options.covering);
  const ModuleOperator& u = cover.u;

  RoundtripReport rep;
  rep.spill = cover.spill;
  rep.params = options.approx;
  rep.tolerance = options.tolerance >= 0.0
                      ? options.tolerance
                      : 2.0 * cover.spill + options.approx.r + options.approx.R;

  ApproxParams back = options.approx;
  std::swap(back.r, back.R);
  const Relation phi = approx_relation(u, options.approx);
  const Relation psi = approx_relation(u.adjoint(), back);
  CoarseMapRep fwd = relation_to_map(phi);
  CoarseMapRep bwd = relation_to_map(psi);

  const ExtMetricSpace& Y = *f.relation.target();
  for (auto [y, x] : phi.pairs())
    if (!std::isfinite(Y.distance_to(y, f.relation.fiber(x)))) ++rep.cross_component_pairs;

  rep.recovered_gap = closeness_gap(fwd.relation, f.relation);
  rep.inverse_gap_x = gap_or_inf(fwd, bwd, f.relation.source());
  rep.inverse_gap_y = gap_or_inf(bwd, fwd, f.relation.target());
  rep.surjectivity_radius = covering_radius(fwd.relation.image(), Y);
  rep.success = rep.recovered_gap <= rep.tolerance && rep.inverse_gap_x <= rep.tolerance &&
                rep.inverse_gap_y <= rep.tolerance &&
                rep.surjectivity_radius <= rep.tolerance;
  rep.forward = std::move(fwd);
  rep.backward = std::move(bwd);
  return rep;
}

ParallelogramResult parallelogram_bound(const std::vector<CVector>& vs,
                                        SignSearch search) {
  ParallelogramResult out;
  const std::size_t k = vs.size();
  for (const auto& v : vs) out.sum_of_squares += std::pow(norm(v), 2);
  out.signs.assign(k, 1);
  if (k == 0) {
    out.exhaustive = true;
    out.satisfied = true;
    return out;
  }
  const std::size_t dim = vs.front().size();
  for (const auto& v : vs)
    if (v.size() != dim) throw Error("dimension_mismatch", "vectors differ in length");

  const bool exhaustive =
      search == SignSearch::exhaustive ||
      (search == SignSearch::automatic && k <= kExhaustiveSignLimit);
  if (exhaustive && k > 30)
    throw Error("size_limit", "exhaustive sign search is limited to 30 vectors");

  if (exhaustive) {
    // The first sign is fixed to +1; flipping every sign leaves the norm alone.
    // Gray-code walk over the remaining k - 1 signs.
    CVector sum(dim);
    for (const auto& v : vs)
      for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
    std::vector<int> signs(k, 1);
    out.lhs = std::pow(norm(sum), 2);
    const std::uint64_t patterns = std::uint64_t{1} << (k - 1);
    for (std::uint64_t g = 1; g < patterns; ++g) {
      const int flip = 1 + __builtin_ctzll(g);
      signs[flip] = -signs[flip];
      for (std::size_t i = 0; i < dim; ++i)
        sum[i] += 2.0 * static_cast<double>(signs[flip]) * vs[flip][i];
      const double value = std::pow(norm(sum), 2);
      if (value > out.lhs) {
        out.lhs = value;
        out.signs = signs;
      }
    }
    out.exhaustive = true;
  } else {
    CVector sum(dim);
    for (std::size_t j = 0; j < k; ++j) {
      const int sign = std::real(inner(sum, vs[j])) >= 0.0 ? 1 : -1;
      out.signs[j] = sign;
      for (std::size_t i = 0; i < dim; ++i) sum[i] += static_cast<double>(sign) * vs[j][i];
    }
    out.lhs = std::pow(norm(sum), 2);
  }
  out.satisfied = out.lhs >= out.sum_of_squares * (1.0 - 1e-12) - 1e-300;
  return out;
}

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error("hypothesis_violation", what);
}

std::vector<int> mask_to_parts(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

struct Candidate {
  double value = -1.0;
  std::vector<int> parts;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.parts < b.parts;
}

}  // namespace

ConcentrationReport concentration_check(const ModuleOperator& t,
                                        const std::vector<PointSet>& partition,
                                        const PointSet& b, const PointSet& c,
                                        const ConcentrationParams& params) {
  const GeometricModule& X = *t.source();
  const GeometricModule& Y = *t.target();
  const int nx = static_cast<int>(X.point_count());
  const int ny = static_cast<int>(Y.point_count());

  std::vector<int> owner(nx, -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].empty()) violation("partition has an empty part");
    for (int x : partition[i]) {
      if (x < 0 || x >= nx) violation("partition references a missing point");
      if (owner[x] >= 0) violation("partition parts overlap");
      owner[x] = static_cast<int>(i);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    violation("partition does not cover the source space");
  for (int y : b)
    if (y < 0 || y >= ny) violation("B references a missing point");
  for (int y : c)
    if (y < 0 || y >= ny) violation("C references a missing point");
  if (!std::includes(c.begin(), c.end(), b.begin(), b.end()))
    violation("B is not contained in C");

  ConcentrationReport rep;
  rep.eps = params.eps;
  const CMatrix& m = t.matrix();
  rep.operator_norm = op_norm(m, kNormTol).value;
  rep.eta_exact = m.rows() < m.cols() || m.empty() ? 0.0 : singular_values(m).back();
  const PointSet all_x = X.space().all_points();
  rep.kappa_exact = cut_norm(t.cut(b, all_x));
  rep.delta_exact = 0.0;
  for (const auto& part : partition)
    rep.delta_exact = std::max(rep.delta_exact, cut_norm(t.cut(c, part)));

  rep.eta = params.eta.value_or(rep.eta_exact);
  rep.kappa = params.kappa.value_or(rep.kappa_exact);
  rep.delta = params.delta.value_or(rep.delta_exact);
  const double slack = 1e-12;
  if (!(rep.eta > 0.0)) violation("eta > 0 fails: T is not bounded below");
  if (rep.eta > rep.eta_exact + slack)
    violation("T is not eta-bounded below: min singular value " +
              std::to_string(rep.eta_exact) + " < eta");
  if (!(rep.kappa > 0.0)) violation("kappa > 0 fails");
  if (rep.kappa > rep.kappa_exact + slack)
    violation("||chi_B T|| >= kappa fails: ||chi_B T|| = " +
              std::to_string(rep.kappa_exact));
  if (rep.delta < rep.delta_exact - slack)
    violation("||chi_C T chi_{A_i}|| <= delta fails: max over parts is " +
              std::to_string(rep.delta_exact));
  if (!(rep.delta < rep.eta)) violation("delta < eta fails: eta^2 - delta^2 must be positive");
  rep.bound = rep.kappa * rep.kappa * std::sqrt(rep.eta * rep.eta - rep.delta * rep.delta) /
              (2.0 * rep.operator_norm);
  if (!(params.eps > 0.0)) violation("eps > 0 fails");
  if (!(params.eps < rep.bound))
    violation("eps < kappa^2 (eta^2 - delta^2)^(1/2) / (2 ||T||) fails: bound is " +
              std::to_string(rep.bound));

  PointSet outside;
  for (int y = 0; y < ny; ++y)
    if (!std::binary_search(c.begin(), c.end(), y)) outside.push_back(y);

  // K_i = χ_{Y \ C} T χ_{A_i} T^* χ_B, compressed.
  const std::size_t k = partition.size();
  std::vector<CMatrix> pieces(k);
  for (std::size_t i = 0; i < k; ++i)
    pieces[i] = t.cut(outside, partition[i]) * t.cut(b, partition[i]).adjoint();

  Candidate best;
  if (outside.empty() || b.empty()) {
    best.value = 0.0;
  } else if (k <= kExhaustivePartitionLimit) {
    rep.exhaustive = true;
    // Gray-code walks over fixed-size chunks; each chunk starts from a
    // directly summed state so chunks are independent.
    const std::uint64_t total = std::uint64_t{1} << k;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 64);
    const std::size_t chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
    std::vector<Candidate> local(chunks);
    parallel_for(chunks, [&](std::size_t ci) {
      const std::uint64_t begin = ci * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      std::uint64_t mask = begin ^ (begin >> 1);
      CMatrix sum(pieces[0].rows(), pieces[0].cols());
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::uint64_t{1} << i)) sum += pieces[i];
      Candidate mine;
      for (std::uint64_t g = begin; g < end; ++g) {
        if (g != begin) {
          const int flip = __builtin_ctzll(g);
          const std::uint64_t bit = std::uint64_t{1} << flip;
          if (mask & bit) sum -= pieces[flip]; else sum += pieces[flip];
          mask ^= bit;
        }
        if (mask == 0) continue;
        Candidate cand{cut_norm(sum), mask_to_parts(mask)};
        if (better(cand, mine)) mine = std::move(cand);
      }
      local[ci] = std::move(mine);
    });
    for (auto& cand : local)
      if (cand.value >= 0.0 && better(cand, best)) best = std::move(cand);
  } else {
    // Constructive path: the norm-attaining vector of χ_B T, split over the
    // parts, signed by the parallelogram bound.
    const SingularPair top = top_singular_pair(t.cut(b, all_x), kNormTol);
    std::vector<CVector> ws(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto cols = X.coords(partition[i]);
      CVector vi(cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j) vi[j] = top.v[cols[j]];
      ws[i] = t.cut(outside, partition[i]).apply(vi);
    }
    const ParallelogramResult signs = parallelogram_bound(ws, SignSearch::greedy);
    std::uint64_t plus = 0, minus = 0;
    std::vector<int> plus_parts, minus_parts;
    CMatrix sum_plus(pieces[0].rows(), pieces[0].cols());
    CMatrix sum_minus = sum_plus;
    for (std::size_t i = 0; i < k; ++i) {
      if (signs.signs[i] > 0) {
        plus_parts.push_back(static_cast<int>(i));
        sum_plus += pieces[i];
        ++plus;
      } else {
        minus_parts.push_back(static_cast<int>(i));
        sum_minus += pieces[i];
        ++minus;
      }
    }
    Candidate a{plus ? cut_norm(sum_plus) : 0.0, plus_parts};
    Candidate bb{minus ? cut_norm(sum_minus) : 0.0, minus_parts};
    best = better(a, bb) ? a : bb;
  }

  rep.best_achieved = std::max(0.0, best.value);
  if (best.value > params.eps && !best.parts.empty()) {
    rep.witness = ConcentrationWitness{best.parts, best.value, rep.bound};
  } else {
    rep.counterexample = rep.exhaustive;
  }
  return rep;
}

namespace {

// Least grid radius passing the app test; `exact` is false when some radius
// below it could not be decided either way.
struct RadiusDecision {
  double radius = kInfinity;
  bool exact = true;
};

std::vector<double> probe_grid(const ExtMetricSpace& Y) {
  std::vector<double> g = Y.realized_distances();
  g.push_back(kInfinity);
  return g;
}

// Min R for a rank-one operator a b^* (both vectors over the target module).
RadiusDecision rank_one_radius(const CVector& a, const CVector& b, const ModulePtr& mod,
                               double eps, const std::vector<double>& grid,
                               const AppParams& app) {
  const ExtMetricSpace& Y = mod->space();
  const int n = static_cast<int>(mod->point_count());
  std::vector<double> na(n, 0.0), nb(n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int j = 0; j < mod->multiplicity(y); ++j) {
      na[y] += std::norm(a[mod->offset(y) + j]);
      nb[y] += std::norm(b[mod->offset(y) + j]);
    }
  auto bounds = [&](double r) {
    double lower = 0.0, frob = 0.0;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (Y.d(x, y) > r) {
          const double v = na[y] * nb[x];
          lower = std::max(lower, v);
          frob += v;
        }
    return std::pair{std::sqrt(lower), std::sqrt(frob)};
  };
  RadiusDecision out;
  for (double r : grid) {
    if (!std::isfinite(r)) return {kInfinity, out.exact};
    const auto [lower, upper] = bounds(r);
    if (lower > eps) continue;
    if (upper <= eps) return {r, out.exact};
    const ModuleOperator op(CMatrix::outer(a, b), mod, mod);
    const AppResult res = app_value(op, r, app);
    if (res.value <= eps) return {r, out.exact && res.exactness == Exactness::exact};
    if (res.lower > eps) continue;
    out.exact = false;
  }
  return {kInfinity, false};
}

RadiusDecision dense_radius(const ModuleOperator& op, double eps,
                            const std::vector<double>& grid, const AppParams& app) {
  const GeometricModule& mod = *op.target();
  const ExtMetricSpace& Y = mod.space();
  const int n = static_cast<int>(mod.point_count());
  std::vector<double> block(static_cast<std::size_t>(n) * n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) block[y * n + x] = op.block_norm(y, x);
  RadiusDecision out;
  for (double r : grid) {
    if (!std::isfinite(r)) return {kInfinity, false};
    double lower = 0.0;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (Y.d(x, y) > r) lower = std::max(lower, block[y * n + x]);
    if (lower > eps) continue;
    const double upper = op_norm(far_truncation(op, r).second.matrix(), 1e-12).value;
    if (upper <= eps) return {r, out.exact};
    const AppResult res = app_value(op, r, app);
    if (res.value <= eps) return {r, out.exact && res.exactness == Exactness::exact};
    if (res.lower > eps) continue;
    out.exact = false;
  }
  return {kInfinity, false};
}

CMatrix random_contraction(const GeometricModule& mod, double r, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t dim = mod.dim();
  CMatrix t(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      if (mod.space().d(mod.point_of(i), mod.point_of(j)) <= r) t(i, j) = Complex(re, im);
    }
  const double nrm = op_norm(t, 1e-12).value;
  if (nrm > 0.0) t *= Complex(1.0 / nrm, 0.0);
  return t;
}

}  // namespace

Profile uniformization_probe(const ModuleOperator& u, const ProbeOptions& options) {
  if (!(options.eps > 0.0)) throw Error("invalid_params", "probe eps must be > 0");
  const ModulePtr& src = u.source();
  const ModulePtr& tgt = u.target();
  const ExtMetricSpace& X = src->space();
  const std::vector<double> grid = probe_grid(tgt->space());
  const CMatrix& um = u.matrix();
  const CMatrix uadj = um.adjoint();

  auto column = [&](std::size_t j) {
    CVector v(um.rows());
    for (std::size_t i = 0; i < um.rows(); ++i) v[i] = um(i, j);
    return v;
  };

  Profile out{ProfileKind::uniformization, {}};
  std::mt19937_64 rng(options.seed);
  for (double r : options.radii) {
    // Basis matrix units e_{w,v} with d(x_v, x_w) <= r; Ad(U) sends them to
    // (U w)(U v)^*.
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < src->dim(); ++i)
      for (std::size_t j = 0; j < src->dim(); ++j)
        if (X.d(src->point_of(i), src->point_of(j)) <= r) units.emplace_back(j, i);

    std::vector<CMatrix> samples;
    for (int s = 0; s < options.samples; ++s)
      samples.push_back(random_contraction(*src, r, rng));

    // Units first: their cheap maximum lets the dense samples skip every
    // radius below it.
    std::vector<RadiusDecision> decisions(units.size());
    parallel_for(units.size(), [&](std::size_t k) {
      const auto [w, v] = units[k];
      decisions[k] = rank_one_radius(column(w), column(v), tgt, options.eps, grid, options.app);
    });
    ProfileSample sample{r, 0.0, Exactness::exact};
    auto absorb = [&](const RadiusDecision& d) {
      sample.value = std::max(sample.value, d.radius);
      if (!d.exact) sample.exactness = Exactness::upper_bound;
    };
    for (const auto& d : decisions) absorb(d);

    std::vector<double> upper_grid;
    for (double g : grid)
      if (g >= sample.value) upper_grid.push_back(g);
    std::vector<RadiusDecision> dense(samples.size());
    parallel_for(samples.size(), [&](std::size_t k) {
      const ModuleOperator conj(um * samples[k] * uadj, tgt, tgt);
      dense[k] = dense_radius(conj, options.eps, upper_grid, options.app);
    });
    for (const auto& d : dense) absorb(d);
    out.samples.push_back(sample);
  }
  return out;
}

Profile quasi_proper_profile(const ModuleOperator& t, double eps,
                             std::span<const double> grid) {
  if (!(eps > 0.0)) throw Error("invalid_params", "quasi_proper_profile needs eps > 0");
  const ExtMetricSpace& X = t.source()->space();
  const ExtMetricSpace& Y = t.target()->space();
  const int nx = static_cast<int>(X.size());
  const int ny = static_cast<int>(Y.size());
  std::vector<double> radii = X.realized_distances();
  radii.push_back(kInfinity);

  Profile out{ProfileKind::qproper, {}};
  for (double s : grid) {
    std::vector<double> per_ball(ny, 0.0);
    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t yi) {
      const PointSet ball = Y.ball(static_cast<int>(yi), s);
      std::vector<double> mass(nx);
      double heaviest = 0.0;
      for (int x = 0; x < nx; ++x) {
        const int xs[] = {x};
        mass[x] = cut_norm(t.cut(ball, xs));
        heaviest = std::max(heaviest, mass[x]);
      }
      if (heaviest == 0.0) return;  // T^* χ_B = 0: nothing to capture
      // Every column tied for the largest mass is an admissible anchor; keep
      // the one needing the smallest radius.
      double found = kInfinity;
      for (int anchor = 0; anchor < nx; ++anchor) {
        if (mass[anchor] < heaviest * (1.0 - 1e-12)) continue;
        for (double a : radii) {
          if (a >= found) break;
          PointSet far;
          for (int x = 0; x < nx; ++x)
            if (!(X.d(anchor, x) <= a)) far.push_back(x);
          if (cut_norm(t.cut(ball, far)) <= eps) {
            found = a;
            break;
          }
        }
      }
      per_ball[yi] = found;
    });
    double value = 0.0;
    for (double v : per_ball) value = std::max(value, v);
    out.samples.push_back({s, value, Exactness::exact});
  }
  return out;
}

double image_mass(const ModuleOperator& t, const PointSet& b) {
  return cut_norm(t.cut(b, t.source()->space().all_points()));
}

}  // namespace coarse
