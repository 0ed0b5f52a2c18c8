#include "coarsekit_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "coarse/coarse.hpp"
#include "coarse/io.hpp"
#include "json.hpp"

namespace coarsekit_cli {
namespace fs = std::filesystem;
using nlohmann::json;
using namespace coarse;

namespace {

json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v == 0.0 ? 0.0 : v;
}

double parse_radius(const std::string& s) {
  if (s == "inf") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("invalid_argument", "not a radius: " + s);
  }
}

std::vector<double> parse_radii(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_radius(s));
  return out;
}

json params_json(const ApproxParams& p) {
  return {{"delta", num(p.delta)}, {"r", num(p.r)}, {"R", num(p.R)},
          {"mode", to_string(p.mode)}};
}

std::vector<int> map_array(const CoarseMapRep& m) {
  std::vector<int> out(m.relation.source_size(), -1);
  for (int x = 0; x < m.relation.source_size(); ++x) {
    const PointSet f = m.relation.fiber(x);
    if (!f.empty()) out[x] = f.front();
  }
  return out;
}

json slots_json(const std::vector<Slot>& slots) {
  json a = json::array();
  for (auto [p, i] : slots) a.push_back({p, i});
  return a;
}

/// Path stored under `key` in a JSON file, resolved against that file.
fs::path referenced(const fs::path& file, const std::string& key) {
  const json j = json::parse(io::read_file(file));
  const fs::path ref = j.at(key).get<std::string>();
  return ref.is_absolute() ? ref : file.parent_path() / ref;
}

/// Where results go, and how file references are written relative to it.
class Sink {
 public:
  Sink(std::string path, std::ostream& out) : path_(std::move(path)), out_(out) {}

  std::string ref(const fs::path& p) const {
    if (path_.empty()) return p.lexically_normal().generic_string();
    return io::relative_ref(p, path_);
  }

  void emit(const std::string& text) const {
    if (path_.empty())
      out_ << text;
    else
      io::write_file(path_, text);
  }
  void emit(const json& j) const { emit(j.dump(2) + "\n"); }

 private:
  std::string path_;
  std::ostream& out_;
};

double support_tol(const ModuleOperator& t, double tol) {
  const double n = t.norm();
  return n > 0.0 ? tol * n : tol;
}

struct Globals {
  unsigned threads = 1;
  double tol = 1e-10;
  std::string output;
};

// --- subcommands -----------------------------------------------------------

struct GenSpaceArgs {
  std::string kind;
  std::vector<int> params;
  std::uint64_t seed = 0;
};

void gen_space(const GenSpaceArgs& a, const Sink& sink) {
  sink.emit(io::space_json(gen(space_kind_from_string(a.kind), a.params, a.seed)));
}

struct AnalyzeArgs {
  std::string op;
  std::vector<std::string> radii;
  bool exact_ql = false;
  int app_iters = 400;
};

void analyze(const AnalyzeArgs& a, const Globals& g, const Sink& sink) {
  const ModuleOperator t = io::load_operator(a.op);
  if (!same_space(t.source()->space_ptr(), t.target()->space_ptr()))
    throw Error("space_mismatch", "analyze needs source and target over one space");
  const double tol = support_tol(t, g.tol);
  std::vector<double> radii = a.radii.empty() ? t.source()->space().realized_distances()
                                              : parse_radii(a.radii);

  json ql = json::array(), app = json::array();
  const QlMode mode = a.exact_ql ? QlMode::exact : QlMode::bounds;
  for (double r : radii) {
    const QlResult q = ql_value(t, r, mode);
    ql.push_back({{"radius", num(r)},
                  {"value", num(q.value)},
                  {"lower", num(q.lower)},
                  {"upper", num(q.upper)},
                  {"exactness", to_string(q.exactness)}});
  }
  const auto apps = app_values(t, radii, {a.app_iters, 1e-9});
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const AppResult& ap = apps[i];
    app.push_back({{"radius", num(r)},
                   {"value", num(ap.value)},
                   {"lower", num(ap.lower)},
                   {"upper", num(ap.upper)},
                   {"converged", ap.converged},
                   {"exactness", to_string(ap.exactness)}});
  }
  json radii_json = json::array();
  for (double r : radii) radii_json.push_back(num(r));
  sink.emit(json{{"operator", a.op},
                 {"norm", num(t.norm())},
                 {"support_tol", num(tol)},
                 {"propagation", num(propagation(t, tol))},
                 {"radii", radii_json},
                 {"ql", ql},
                 {"app", app}});
}

struct CoverArgs {
  std::string map, src_mult, tgt_mult;
  double spill = 0.0;
  bool auto_spill = false;
  bool unitary = false;
};

void cover(const CoverArgs& a, const Globals& g, const Sink& sink) {
  const CoarseMapRep f = io::load_map(a.map);
  const ModulePtr src = io::load_module(a.src_mult);
  const ModulePtr tgt = io::load_module(a.tgt_mult);
  const CoveringOptions opts{a.spill, a.auto_spill};
  const CoveringResult res = a.unitary ? build_covering_unitary(f, src, tgt, opts)
                                       : build_covering_isometry(f, src, tgt, opts);
  const Relation supp = support_relation(res.u, g.tol);
  const ExtMetricSpace& Y = tgt->space();
  double gap = 0.0;
  for (auto [y, x] : supp.pairs()) gap = std::max(gap, Y.distance_to(y, f.relation.fiber(x)));

  json j = json::parse(io::operator_json(res.u, sink.ref(a.src_mult), sink.ref(a.tgt_mult)));
  json check{{"spill", num(res.spill)},
             {"support_gap", num(gap)},
             {"isometry_residual", num(isometry_residual(res.u))},
             {"unitary", a.unitary}};
  if (a.unitary) check["unitary_residual"] = num(unitary_residual(res.u));
  j["verification"] = std::move(check);
  sink.emit(j);
}

struct PhiArgs {
  std::string op;
  ApproxParams params;
  std::string mode = "maximal_cliques";
};

void phi(PhiArgs a, const Sink& sink) {
  a.params.mode = bounded_mode_from_string(a.mode);
  const ModuleOperator t = io::load_operator(a.op);
  const Relation rel = approx_relation(t, a.params);
  const std::string sref = sink.ref(referenced(referenced(a.op, "source"), "space"));
  const std::string tref = sink.ref(referenced(referenced(a.op, "target"), "space"));
  json j = json::parse(io::relation_json(rel, sref, tref));
  const CoarseMapRep m = relation_to_map(rel);
  j["params"] = params_json(a.params);
  j["map"] = map_array(m);
  j["fiber_diameter"] = num(m.fiber_diameter);
  j["domain_covering_radius"] = num(m.domain_covering_radius);
  j["norm"] = num(t.norm());
  sink.emit(j);
}

struct RoundtripArgs {
  std::string map, src_mult, tgt_mult;
  double spill = 0.0;
  bool auto_spill = false;
  ApproxParams params{0.9, 0.0, 0.0, BoundedMode::maximal_cliques};
  std::string mode = "maximal_cliques";
  double tolerance = -1.0;
};

void roundtrip_cmd(RoundtripArgs a, const Sink& sink) {
  a.params.mode = bounded_mode_from_string(a.mode);
  const CoarseMapRep f = io::load_map(a.map);
  const ModulePtr src = io::load_module(a.src_mult);
  const ModulePtr tgt = io::load_module(a.tgt_mult);
  const RoundtripReport rep =
      roundtrip(f, src, tgt, {{a.spill, a.auto_spill}, a.params, a.tolerance});
  json j{{"spill", num(rep.spill)},
         {"params", params_json(rep.params)},
         {"recovered_gap", num(rep.recovered_gap)},
         {"inverse_gap_x", num(rep.inverse_gap_x)},
         {"inverse_gap_y", num(rep.inverse_gap_y)},
         {"surjectivity_radius", num(rep.surjectivity_radius)},
         {"tolerance", num(rep.tolerance)},
         {"success", rep.success},
         {"cross_component_pairs", rep.cross_component_pairs}};
  auto side = [](const std::optional<CoarseMapRep>& m) -> json {
    if (!m) return nullptr;
    return {{"map", map_array(*m)},
            {"fiber_diameter", num(m->fiber_diameter)},
            {"domain_covering_radius", num(m->domain_covering_radius)}};
  };
  j["forward"] = side(rep.forward);
  j["backward"] = side(rep.backward);
  sink.emit(j);
}

struct ConcentrationArgs {
  std::string op, partition;
  std::vector<int> b, c;
  double eps = 0.0;
  std::optional<double> eta, kappa, delta;
};

std::vector<PointSet> load_partition(const std::string& path) {
  const json j = json::parse(io::read_file(path));
  const json& parts = j.is_object() ? j.at("parts") : j;
  return parts.get<std::vector<PointSet>>();
}

void concentration(const ConcentrationArgs& a, const Sink& sink) {
  const ModuleOperator t = io::load_operator(a.op);
  const auto partition = load_partition(a.partition);
  const ConcentrationReport r =
      concentration_check(t, partition, a.b, a.c, {a.eps, a.eta, a.kappa, a.delta});
  json j{{"eta", num(r.eta)},
         {"kappa", num(r.kappa)},
         {"delta", num(r.delta)},
         {"eta_exact", num(r.eta_exact)},
         {"kappa_exact", num(r.kappa_exact)},
         {"delta_exact", num(r.delta_exact)},
         {"operator_norm", num(r.operator_norm)},
         {"bound", num(r.bound)},
         {"eps", num(r.eps)},
         {"exhaustive", r.exhaustive},
         {"best_achieved", num(r.best_achieved)},
         {"counterexample", r.counterexample}};
  if (r.witness)
    j["witness"] = {{"parts", r.witness->parts},
                    {"achieved", num(r.witness->achieved)},
                    {"bound", num(r.witness->bound)}};
  else
    j["witness"] = nullptr;
  sink.emit(j);
}

struct ProbeArgs {
  std::string op;
  double eps = 0.5;
  std::vector<std::string> r{"0"};
  int samples = 4;
  std::uint64_t seed = 0;
  int app_iters = 60;
};

void probe(const ProbeArgs& a, const Sink& sink) {
  const ModuleOperator u = io::load_operator(a.op);
  ProbeOptions opts;
  opts.eps = a.eps;
  opts.radii = parse_radii(a.r);
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.app.iters = a.app_iters;
  const Profile p = uniformization_probe(u, opts);
  std::ostringstream os;
  os << "r,R,exactness\n";
  auto cell = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    std::ostringstream c;
    c.precision(17);
    c << v;
    return c.str();
  };
  for (const auto& s : p.samples)
    os << cell(s.radius) << ',' << cell(s.value) << ',' << to_string(s.exactness) << '\n';
  sink.emit(os.str());
}

void report_error(std::ostream& err, const std::string& code, const std::string& detail,
                  json extra = json::object()) {
  json j = std::move(extra);
  j["error"] = code;
  j["detail"] = detail;
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coarsekit: finite-scale coarse geometry experiments"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--tol", g.tol, "relative support tolerance")->check(CLI::PositiveNumber);

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", g.output, "output file (default stdout)");
  };

  GenSpaceArgs gs;
  auto* c_gen = app.add_subcommand("gen-space", "generate an example space");
  c_gen->add_option("--kind", gs.kind)->required();
  c_gen->add_option("--params", gs.params)->delimiter(',');
  c_gen->add_option("--seed", gs.seed);
  add_output(c_gen);

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "propagation, ql and app profiles");
  c_an->add_option("--op", an.op)->required();
  c_an->add_option("--radii", an.radii)->delimiter(',');
  c_an->add_flag("--exact-ql", an.exact_ql);
  c_an->add_option("--app-iters", an.app_iters)->check(CLI::PositiveNumber);
  add_output(c_an);

  CoverArgs cv;
  auto* c_cv = app.add_subcommand("cover", "covering isometry of a coarse map");
  c_cv->add_option("--map", cv.map)->required();
  c_cv->add_option("--src-mult", cv.src_mult)->required();
  c_cv->add_option("--tgt-mult", cv.tgt_mult)->required();
  c_cv->add_option("--spill", cv.spill)->check(CLI::NonNegativeNumber);
  c_cv->add_flag("--auto-spill", cv.auto_spill);
  c_cv->add_flag("--unitary", cv.unitary);
  add_output(c_cv);

  PhiArgs ph;
  auto* c_ph = app.add_subcommand("phi", "approximating relation of an operator");
  c_ph->add_option("--op", ph.op)->required();
  c_ph->add_option("--delta", ph.params.delta)->required();
  c_ph->add_option("--r", ph.params.r)->check(CLI::NonNegativeNumber);
  c_ph->add_option("--R", ph.params.R)->check(CLI::NonNegativeNumber);
  c_ph->add_option("--mode", ph.mode);
  add_output(c_ph);

  RoundtripArgs rt;
  auto* c_rt = app.add_subcommand("roundtrip", "map -> covering -> relation -> map");
  c_rt->add_option("--map", rt.map)->required();
  c_rt->add_option("--src-mult", rt.src_mult)->required();
  c_rt->add_option("--tgt-mult", rt.tgt_mult)->required();
  c_rt->add_option("--spill", rt.spill)->check(CLI::NonNegativeNumber);
  c_rt->add_flag("--auto-spill", rt.auto_spill);
  c_rt->add_option("--delta", rt.params.delta);
  c_rt->add_option("--r", rt.params.r)->check(CLI::NonNegativeNumber);
  c_rt->add_option("--R", rt.params.R)->check(CLI::NonNegativeNumber);
  c_rt->add_option("--mode", rt.mode);
  c_rt->add_option("--tolerance", rt.tolerance);
  add_output(c_rt);

  ConcentrationArgs cc;
  auto* c_cc = app.add_subcommand("concentration", "search for a non-quasi-local partial sum");
  c_cc->add_option("--op", cc.op)->required();
  c_cc->add_option("--partition", cc.partition)->required();
  c_cc->add_option("--B", cc.b)->delimiter(',')->required();
  c_cc->add_option("--C", cc.c)->delimiter(',')->required();
  c_cc->add_option("--eps", cc.eps)->required();
  c_cc->add_option("--eta", cc.eta);
  c_cc->add_option("--kappa", cc.kappa);
  c_cc->add_option("--delta", cc.delta);
  add_output(c_cc);

  ProbeArgs pr;
  auto* c_pr = app.add_subcommand("probe-uniformization", "uniformization profile as CSV");
  c_pr->add_option("--op", pr.op)->required();
  c_pr->add_option("--eps", pr.eps);
  c_pr->add_option("--r", pr.r)->delimiter(',');
  c_pr->add_option("--samples", pr.samples)->check(CLI::NonNegativeNumber);
  c_pr->add_option("--seed", pr.seed);
  c_pr->add_option("--app-iters", pr.app_iters)->check(CLI::PositiveNumber);
  add_output(c_pr);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return 2;
  }

  try {
    set_thread_count(g.threads);
    const Sink sink(g.output, out);
    if (*c_gen) gen_space(gs, sink);
    else if (*c_an) analyze(an, g, sink);
    else if (*c_cv) cover(cv, g, sink);
    else if (*c_ph) phi(ph, sink);
    else if (*c_rt) roundtrip_cmd(rt, sink);
    else if (*c_cc) concentration(cc, sink);
    else if (*c_pr) probe(pr, sink);
  } catch (const HallViolation& e) {
    report_error(err, e.code(), e.what(),
                 {{"witness",
                   {{"source_slots", slots_json(e.source_slots())},
                    {"target_slots", slots_json(e.target_slots())},
                    {"source_points", e.source_points()},
                    {"target_points", e.target_points()},
                    {"spill", num(e.spill())}}}});
    return 1;
  } catch (const Error& e) {
    report_error(err, e.code(), e.what());
    return 1;
  } catch (const json::exception& e) {
    report_error(err, "parse_error", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace coarsekit_cli
