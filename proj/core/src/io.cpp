#include "coarse/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "coarse/error.hpp"
#include "json.hpp"

namespace coarse::io {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error("parse_error", what + ": " + e.what());
  }
}

template <class Fn>
auto guarded(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error("parse_error", what + ": " + e.what());
  }
}

fs::path resolve(const fs::path& ref, const fs::path& from_file) {
  if (ref.is_absolute()) return ref;
  return from_file.parent_path() / ref;
}

double distance_value(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfinity;
    throw Error("parse_error", "distance strings must be \"inf\"");
  }
  return v.get<double>();
}

json distance_entry(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io_error", "cannot write " + path.string());
  out << text;
}

ExtMetricSpace parse_space(const std::string& text) {
  const json j = parse_json(text, "space file");
  return guarded("space file", [&] {
    auto labels = j.at("points").get<std::vector<std::string>>();
    const std::size_t n = labels.size();
    if (j.contains("dist")) {
      const json& rows = j.at("dist");
      if (rows.size() != n) throw Error("parse_error", "dist must have one row per point");
      std::vector<double> dist;
      dist.reserve(n * n);
      for (const auto& row : rows) {
        if (row.size() != n) throw Error("parse_error", "dist rows must have n entries");
        for (const auto& v : row) dist.push_back(distance_value(v));
      }
      return ExtMetricSpace::from_distances(std::move(labels), std::move(dist));
    }
    std::vector<WeightedEdge> edges;
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        if (e.size() < 2 || e.size() > 3)
          throw Error("parse_error", "edges are [i, j] or [i, j, w]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(),
                         e.size() == 3 ? e[2].get<double>() : 1.0});
      }
    return ExtMetricSpace::from_edges(std::move(labels), edges);
  });
}

std::string space_json(const ExtMetricSpace& space) {
  json j;
  j["points"] = space.labels();
  json rows = json::array();
  const int n = static_cast<int>(space.size());
  for (int x = 0; x < n; ++x) {
    json row = json::array();
    for (int y = 0; y < n; ++y) row.push_back(distance_entry(space.d(x, y)));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  return j.dump(2) + "\n";
}

SpacePtr load_space(const fs::path& path) { return share(parse_space(read_file(path))); }

Relation load_relation(const fs::path& path) {
  const json j = parse_json(read_file(path), path.string());
  return guarded(path.string(), [&] {
    const SpacePtr src = load_space(resolve(j.at("source").get<std::string>(), path));
    const SpacePtr tgt = load_space(resolve(j.at("target").get<std::string>(), path));
    Relation rel(src, tgt);
    for (const auto& p : j.at("pairs")) rel.insert(p.at(0).get<int>(), p.at(1).get<int>());
    return rel;
  });
}

std::string relation_json(const Relation& rel, const std::string& source_ref,
                          const std::string& target_ref) {
  json j;
  j["source"] = source_ref;
  j["target"] = target_ref;
  json pairs = json::array();
  for (auto [y, x] : rel.pairs()) pairs.push_back({y, x});
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

ModulePtr load_module(const fs::path& path) {
  const json j = parse_json(read_file(path), path.string());
  return guarded(path.string(), [&] {
    const SpacePtr space = load_space(resolve(j.at("space").get<std::string>(), path));
    return share(GeometricModule(space, j.at("multiplicity").get<std::vector<int>>()));
  });
}

std::string module_json(const GeometricModule& module, const std::string& space_ref) {
  json j;
  j["space"] = space_ref;
  j["multiplicity"] = module.multiplicity();
  return j.dump(2) + "\n";
}

namespace {

CMatrix matrix_from(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  if (re.size() != rows * cols || im.size() != rows * cols)
    throw Error("parse_error", "matrix needs rows * cols entries in re and im");
  std::vector<Complex> data(rows * cols);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = Complex(re[i], im[i]);
  return CMatrix(rows, cols, std::move(data));
}

json matrix_to(const CMatrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.data().size());
  im.reserve(m.data().size());
  for (const auto& z : m.data()) {
    re.push_back(z.real() == 0.0 ? 0.0 : z.real());
    im.push_back(z.imag() == 0.0 ? 0.0 : z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

}  // namespace

CMatrix parse_matrix(const std::string& text) {
  const json j = parse_json(text, "matrix file");
  return guarded("matrix file", [&] { return matrix_from(j); });
}

std::string matrix_json(const CMatrix& m) { return matrix_to(m).dump(2) + "\n"; }

ModuleOperator load_operator(const fs::path& path) {
  const json j = parse_json(read_file(path), path.string());
  return guarded(path.string(), [&] {
    const ModulePtr src = load_module(resolve(j.at("source").get<std::string>(), path));
    const ModulePtr tgt = load_module(resolve(j.at("target").get<std::string>(), path));
    return ModuleOperator(matrix_from(j), src, tgt);
  });
}

std::string operator_json(const ModuleOperator& op, const std::string& source_ref,
                          const std::string& target_ref) {
  json j = matrix_to(op.matrix());
  j["source"] = source_ref;
  j["target"] = target_ref;
  return j.dump(2) + "\n";
}

CoarseMapRep load_map(const fs::path& path) {
  const json j = parse_json(read_file(path), path.string());
  return guarded(path.string(), [&] {
    const SpacePtr src = load_space(resolve(j.at("source").get<std::string>(), path));
    const SpacePtr tgt = load_space(resolve(j.at("target").get<std::string>(), path));
    const auto map = j.at("map").get<std::vector<int>>();
    for (int y : map)
      if (y < -1 || y >= static_cast<int>(tgt->size()))
        throw Error("parse_error", "map entry outside the target space");
    return CoarseMapRep::from_function(src, tgt, map);
  });
}

std::string map_json(std::span<const int> map, const std::string& source_ref,
                     const std::string& target_ref) {
  json j;
  j["source"] = source_ref;
  j["target"] = target_ref;
  j["map"] = std::vector<int>(map.begin(), map.end());
  return j.dump(2) + "\n";
}

std::string relative_ref(const fs::path& target, const fs::path& from_file) {
  const fs::path base = fs::absolute(from_file).parent_path();
  return fs::relative(fs::absolute(target), base).generic_string();
}

}  // namespace coarse::io
