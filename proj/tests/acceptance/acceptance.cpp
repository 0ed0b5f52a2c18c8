// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coarse/coarse.hpp"
#include "coarse/io.hpp"
#include "coarsekit_cli/cli.hpp"

using namespace coarse;

namespace {

std::string fixture(const std::string& name) {
  return std::string(COARSEKIT_FIXTURES) + "/" + name;
}

ModulePtr uniform(const SpacePtr& s, int m) { return share(GeometricModule::uniform(s, m)); }

SpacePtr random_space(int n, std::mt19937_64& rng, double p_edge) {
  std::bernoulli_distribution keep(p_edge);
  std::uniform_int_distribution<int> w(1, 3);
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) edges.push_back({i, j, static_cast<double>(w(rng))});
  return share(ExtMetricSpace::from_edges(labels, edges));
}

CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                      double density = 1.0) {
  std::normal_distribution<double> g;
  std::bernoulli_distribution keep(density);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (keep(rng)) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

double restricted_norm(const CVector& v, const ModulePtr& m, const PointSet& a) {
  double sq = 0.0;
  for (std::size_t c : m->coords(a)) sq += std::norm(v[c]);
  return std::sqrt(sq);
}

PointSet random_subset(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(0.5);
  PointSet s;
  for (std::size_t i = 0; i < n; ++i)
    if (keep(rng)) s.push_back(static_cast<int>(i));
  return s;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& name, double limit_s,
               const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s [%.2fs%s] %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              limit_s > 0 ? (" / " + std::to_string(static_cast<int>(limit_s)) + "s").c_str()
                          : "",
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// 1 --------------------------------------------------------------------------

Outcome sandwich() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> size(8, 12);
  std::size_t checks = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_space(size(rng), rng, 0.3);
    auto m = uniform(s, 1);
    ModuleOperator t(random_matrix(m->dim(), m->dim(), rng, 0.5), m, m);
    const auto grid = s->realized_distances();
    const auto app = app_values(t, grid, {200, 1e-9});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double ql = ql_value(t, grid[i], QlMode::exact).value;
      const double gt = far_truncation(t, grid[i]).second.norm();
      worst = std::max({worst, ql - app[i].value, app[i].value - gt});
      ++checks;
    }
  }
  double band_err = 0.0;
  auto p10 = share(gen(SpaceKind::path, {10}));
  auto m = uniform(p10, 1);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix t = random_matrix(10, 10, rng);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        if (std::abs(i - j) > 1) t(i, j) = 0.0;
    const Complex c(0.05 * (trial + 1), -0.3);
    t(9 - trial % 3, trial % 3) = c;
    const double v = app_value(ModuleOperator(t, m, m), 1.0).value;
    band_err = std::max(band_err, std::abs(v - std::abs(c)));
  }
  const bool ok = worst <= 1e-8 && band_err <= 1e-8;
  return {ok, std::to_string(checks) + " radii; worst violation " + fmt("%.3g", worst) +
                  "; band+far error " + fmt("%.3g", band_err)};
}

// 2 --------------------------------------------------------------------------

Outcome exact_vs_bounds() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> size(3, 10);
  std::uniform_int_distribution<int> mult(1, 2);
  int ql_bad = 0, phi_bad = 0, ops = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto s = random_space(size(rng), rng, 0.35);
    std::vector<int> mults(s->size());
    for (auto& x : mults) x = mult(rng);
    auto m = share(GeometricModule(s, mults));
    ModuleOperator t(random_matrix(m->dim(), m->dim(), rng, 0.6), m, m);
    ++ops;
    for (double r : s->realized_distances()) {
      const auto ex = ql_value(t, r, QlMode::exact);
      const auto bd = ql_value(t, r, QlMode::bounds);
      if (ex.value < bd.lower - 1e-10 || ex.value > bd.upper + 1e-10) ++ql_bad;
    }
    const double norm = t.norm();
    for (double frac : {0.1, 0.3, 0.6})
      for (double rr : {0.0, 1.0, 3.0}) {
        ApproxParams p{frac * norm, rr, rr, BoundedMode::maximal_cliques};
        const Relation a = approx_relation(t, p);
        p.mode = BoundedMode::all_subsets;
        if (!(a == approx_relation(t, p))) ++phi_bad;
      }
  }
  return {ql_bad == 0 && phi_bad == 0,
          std::to_string(ops) + " operators; ql outside bracket " + std::to_string(ql_bad) +
              "; mode mismatches " + std::to_string(phi_bad)};
}

// 3 --------------------------------------------------------------------------

Outcome matrix_units() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> size(2, 9);
  std::uniform_int_distribution<int> mult(1, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto sx = random_space(size(rng), rng, 0.4);
    auto sy = random_space(size(rng), rng, 0.4);
    std::vector<int> mx(sx->size()), my(sy->size());
    for (auto& x : mx) x = mult(rng);
    for (auto& y : my) y = mult(rng);
    auto mX = share(GeometricModule(sx, mx));
    auto mY = share(GeometricModule(sy, my));
    const CVector v = random_vector(mX->dim(), rng);
    const CVector w = random_vector(mY->dim(), rng);
    const PointSet a = random_subset(sx->size(), rng), b = random_subset(sy->size(), rng);
    const auto e = matrix_unit(v, mX, w, mY);
    const double lhs = (chi(b, mY) * e * chi(a, mX)).norm();
    const double rhs = restricted_norm(v, mX, a) * restricted_norm(w, mY, b);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  return {worst <= 1e-10, "100 instances; worst relative error " + fmt("%.3g", worst)};
}

// 4 --------------------------------------------------------------------------

Outcome covering_soundness() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> size(2, 16);
  std::uniform_int_distribution<int> mult(1, 3);
  int bad = 0, spilled = 0;
  double worst_res = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto sx = random_space(size(rng), rng, 0.3);
    auto sy = random_space(size(rng), rng, 0.3);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(sy->size()) - 1);
    std::vector<int> f(sx->size());
    for (auto& y : f) y = pick(rng);
    std::vector<int> mx(sx->size());
    for (auto& x : mx) x = mult(rng);
    // Fibre-exact target multiplicities, then (every other instance) slots
    // moved inside target components so a positive spill is needed.
    std::vector<int> my(sy->size(), 0);
    for (std::size_t x = 0; x < f.size(); ++x) my[f[x]] += mx[x];
    for (auto& y : my) y += trial % 3 == 0 ? 1 : 0;
    if (trial % 2 == 1) {
      for (int k = 0; k < 4; ++k) {
        const int a = pick(rng), b = pick(rng);
        if (a != b && my[a] > 0 && std::isfinite(sy->d(a, b))) --my[a], ++my[b];
      }
    }
    auto mX = share(GeometricModule(sx, mx));
    auto mY = share(GeometricModule(sy, my));
    auto map = CoarseMapRep::from_function(sx, sy, f);
    const auto res = build_covering_isometry(map, mX, mY, {0.0, true});
    if (res.spill > 0) ++spilled;
    const double resid = isometry_residual(res.u);
    worst_res = std::max(worst_res, resid);
    double gap = 0.0;
    for (auto [y, x] : support_relation(res.u, default_support_tol(res.u)).pairs())
      gap = std::max(gap, sy->distance_to(y, map.relation.fiber(x)));
    if (resid > 1e-12 || gap > res.spill) ++bad;
  }
  bool hall = false;
  try {
    build_covering_isometry(io::load_map(fixture("collapse_map.json")),
                            io::load_module(fixture("p4_m1.json")),
                            io::load_module(fixture("p4_m1.json")));
  } catch (const HallViolation& h) {
    hall = h.target_slots().size() < h.source_slots().size();
  }
  return {bad == 0 && hall, "50 instances (" + std::to_string(spilled) +
                                " needing spill); violations " + std::to_string(bad) +
                                "; worst U*U-I " + fmt("%.3g", worst_res) +
                                (hall ? "; Hall witness ok" : "; no Hall witness")};
}

// 5 --------------------------------------------------------------------------

Outcome roundtrips() {
  struct Case {
    const char* name;
    const char* map;
    const char* src;
    const char* tgt;
    bool auto_spill;
  };
  const Case cases[] = {
      {"identity", "identity_map.json", "p8_m1.json", "p8_m1.json", false},
      {"shift", "shift_map.json", "p8_m1.json", "p8_m1.json", true},
      {"halving", "halving_map.json", "p32_m1.json", "p16_m2.json", false},
      {"swap", "swap_map.json", "two_p4_m1.json", "two_p4_m1.json", false},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    RoundtripOptions opts;
    opts.covering.auto_spill = c.auto_spill;
    const auto rep = roundtrip(io::load_map(fixture(c.map)), io::load_module(fixture(c.src)),
                               io::load_module(fixture(c.tgt)), opts);
    const double limit = 2 * rep.spill + rep.params.r + rep.params.R;
    bool good = rep.recovered_gap <= limit && std::isfinite(rep.inverse_gap_x) &&
                std::isfinite(rep.inverse_gap_y);
    if (std::string(c.name) == "halving") good = good && rep.recovered_gap <= 2.0;
    ok = ok && good;
    detail += std::string(c.name) + " " +
              fmt("gap %g<=%g", rep.recovered_gap, limit) +
              fmt(" inv %g/%g; ", rep.inverse_gap_x, rep.inverse_gap_y);
  }
  return {ok, detail};
}

// 6 --------------------------------------------------------------------------

Outcome concentration() {
  const auto t = io::load_operator(fixture("cliques_op.json"));
  std::vector<PointSet> parts{{0}, {1}, {2}};
  const PointSet b{6}, c{6};
  const double bound = concentration_check(t, parts, b, c, {1e-9, {}, {}, {}}).bound;
  bool ok = true;
  std::string detail = fmt("bound %.6g; ", bound);
  for (double frac : {0.5, 0.9, 0.99}) {
    const auto rep = concentration_check(t, parts, b, c, {frac * bound, {}, {}, {}});
    const bool good = rep.exhaustive && rep.witness && rep.witness->achieved > frac * bound;
    ok = ok && good;
    detail += fmt("%g%%: ", frac * 100) +
              (good ? fmt("achieved %.6g", rep.witness->achieved) : std::string("no witness")) +
              "; ";
  }
  return {ok, detail};
}

// 7 --------------------------------------------------------------------------

Outcome parallelogram() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> count(1, 12), dim(1, 6);
  int bad = 0;
  double min_margin = kInfinity;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = count(rng), n = dim(rng);
    std::vector<CVector> vs;
    for (int i = 0; i < k; ++i) vs.push_back(random_vector(n, rng));
    const auto res = parallelogram_bound(vs, SignSearch::exhaustive);
    if (!res.exhaustive || res.lhs < res.sum_of_squares * (1 - 1e-12)) ++bad;
    min_margin = std::min(min_margin, res.lhs / res.sum_of_squares);
  }
  return {bad == 0, "100 families; failures " + std::to_string(bad) +
                        fmt("; least lhs/sum %.4g", min_margin)};
}

// 8 --------------------------------------------------------------------------

Outcome non_quasi_control() {
  constexpr int L = 32, N = 16;
  auto c = share(gen(SpaceKind::cycle, {L}));
  auto m = uniform(c, N);
  CMatrix u(L * N, L * N);
  for (int k = 0; k < L; ++k)
    for (int n = 0; n < N; ++n) u(((k + n) % L) * N + n, k * N + n) = 1.0;
  ProbeOptions opts;
  opts.eps = 0.5;
  opts.radii = {0.0};
  const auto grow = uniformization_probe(ModuleOperator(u, m, m), opts);
  const double r0 = grow.value_at(0.0);
  bool ok = r0 >= N / 2.0;
  std::string detail = fmt("fibre shift R(0.5,0)=%g (need >= %g)", r0, N / 2.0);

  struct Case {
    const char* map;
    const char* src;
    const char* tgt;
  };
  const Case cases[] = {{"identity_map.json", "p8_m1.json", "p8_m1.json"},
                        {"halving_map.json", "p32_m1.json", "p16_m2.json"},
                        {"swap_map.json", "two_p4_m1.json", "two_p4_m1.json"}};
  ProbeOptions small;
  small.eps = 0.5;
  small.radii = {0.0, 1.0, 2.0};
  for (const auto& cs : cases) {
    const auto f = io::load_map(fixture(cs.map));
    const auto cov = build_covering_unitary(f, io::load_module(fixture(cs.src)),
                                            io::load_module(fixture(cs.tgt)));
    if (cov.spill != 0.0) ok = false;
    const auto prof = uniformization_probe(cov.u, small);
    const auto rho = expansion_profile(f.relation, small.radii);
    for (double r : small.radii) {
      if (prof.value_at(r) > rho.value_at(r)) {
        ok = false;
        detail += std::string("; ") + cs.map + fmt(" R(0.5,%g)=%g", r, prof.value_at(r)) +
                  fmt(" > rho %g", rho.value_at(r));
      }
    }
  }
  return {ok, detail + "; spill-0 coverings within rho"};
}

// 9 --------------------------------------------------------------------------

Outcome determinism() {
  const std::vector<std::vector<std::string>> runs = {
      {"gen-space", "--kind", "random_regular", "--params", "24,3", "--seed", "5"},
      {"gen-space", "--kind", "cluster_space", "--params", "4"},
      {"analyze", "--op", fixture("shift_op.json"), "--radii", "0,1,2,3"},
      {"analyze", "--op", fixture("cliques_op.json"), "--exact-ql"},
      {"cover", "--map", fixture("identity_map.json"), "--src-mult", fixture("p8_m1.json"),
       "--tgt-mult", fixture("p8_m1.json"), "--unitary"},
      {"cover", "--map", fixture("shift_map.json"), "--src-mult", fixture("p8_m1.json"),
       "--tgt-mult", fixture("p8_m1.json"), "--auto-spill"},
      {"cover", "--map", fixture("halving_map.json"), "--src-mult", fixture("p32_m1.json"),
       "--tgt-mult", fixture("p16_m2.json"), "--unitary"},
      {"cover", "--map", fixture("collapse_map.json"), "--src-mult", fixture("p4_m1.json"),
       "--tgt-mult", fixture("p4_m1.json")},
      {"phi", "--op", fixture("shift_op.json"), "--delta", "0.5", "--r", "1", "--R", "1"},
      {"phi", "--op", fixture("cliques_op.json"), "--delta", "0.3", "--mode", "all_subsets"},
      {"roundtrip", "--map", fixture("halving_map.json"), "--src-mult", fixture("p32_m1.json"),
       "--tgt-mult", fixture("p16_m2.json")},
      {"roundtrip", "--map", fixture("swap_map.json"), "--src-mult", fixture("two_p4_m1.json"),
       "--tgt-mult", fixture("two_p4_m1.json")},
      {"concentration", "--op", fixture("cliques_op.json"), "--partition",
       fixture("cliques_partition.json"), "--B", "6", "--C", "6", "--eps", "0.03"},
      {"probe-uniformization", "--op", fixture("shift_op.json"), "--r", "0,1,2", "--samples",
       "3", "--seed", "11"},
  };
  int differing = 0;
  for (const auto& args : runs) {
    std::string reference;
    bool first = true, same = true;
    for (const char* threads : {"1", "1", "8", "8"}) {
      std::vector<std::string> full{"--threads", threads};
      full.insert(full.end(), args.begin(), args.end());
      std::ostringstream out, err;
      const int code = coarsekit_cli::run(full, out, err);
      const std::string bytes = std::to_string(code) + "\n" + out.str() + "\n" + err.str();
      if (first) reference = bytes, first = false;
      same = same && bytes == reference;
    }
    if (!same) ++differing;
  }
  return {differing == 0, std::to_string(runs.size()) + " runs x 4; differing " +
                              std::to_string(differing)};
}

}  // namespace

int main() {
  criterion(1, "hierarchy sandwich", 60, sandwich);
  criterion(2, "exact ql vs bounds, clique vs subset modes", 120, exact_vs_bounds);
  criterion(3, "matrix-unit law", 0, matrix_units);
  criterion(4, "covering soundness", 0, covering_soundness);
  criterion(5, "rigidity round-trip", 30, roundtrips);
  criterion(6, "concentration witness", 0, concentration);
  criterion(7, "parallelogram signs", 0, parallelogram);
  criterion(8, "non-quasi-control witness", 0, non_quasi_control);
  criterion(9, "cli determinism", 0, determinism);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
