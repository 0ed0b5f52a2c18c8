#include <filesystem>

#include "coarse/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace testing_support;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "coarsekit_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("space files round trip") {
  auto two = two_paths(2, 3);
  const std::string text = io::space_json(*two);
  CHECK(text.find("\"inf\"") != std::string::npos);
  CHECK(io::parse_space(text) == *two);

  auto from_edges = io::parse_space(R"({"points": ["a", "b", "c"], "edges": [[0, 1, 2], [1, 2]]})");
  CHECK(from_edges.d(0, 2) == 3.0);
  auto from_dist = io::parse_space(R"({"points": ["a", "b"], "dist": [[0, "inf"], ["inf", 0]]})");
  CHECK(std::isinf(from_dist.d(0, 1)));
  CHECK_THROWS_AS(io::parse_space(R"({"points": ["a"], "dist": [[1]]})"), Error);
  CHECK_THROWS_AS(io::parse_space("{not json"), Error);
  CHECK_THROWS_AS(io::parse_space(R"({"points": ["a", "b"], "dist": [[0, "big"], [1, 0]]})"), Error);
}

TEST_CASE("matrix files round trip") {
  std::mt19937_64 rng(71);
  auto m = random_matrix(3, 4, rng);
  CHECK(io::parse_matrix(io::matrix_json(m)) == m);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 2, "cols": 2, "re": [1, 2, 3]})"), Error);
}

TEST_CASE("linked files resolve relative to the referencing file") {
  auto p4 = path(4);
  io::write_file(scratch("spaces/p4.json"), io::space_json(*p4));
  GeometricModule mod(p4, {1, 2, 0, 1});
  io::write_file(scratch("mods/m.json"), io::module_json(mod, "../spaces/p4.json"));
  auto loaded = io::load_module(scratch("mods/m.json"));
  CHECK(*loaded == mod);

  std::mt19937_64 rng(72);
  auto mp = share(mod);
  auto t = random_operator(mp, mp, rng);
  io::write_file(scratch("op.json"), io::operator_json(t, "mods/m.json", "mods/m.json"));
  auto back = io::load_operator(scratch("op.json"));
  CHECK(back.matrix() == t.matrix());

  std::vector<int> f{1, 1, 2, 3};
  io::write_file(scratch("map.json"), io::map_json(f, "spaces/p4.json", "spaces/p4.json"));
  CHECK(io::load_map(scratch("map.json")).relation == graph(p4, p4, f));

  Relation rel(p4, p4);
  rel.insert(2, 0);
  rel.insert(3, 1);
  io::write_file(scratch("rel.json"), io::relation_json(rel, "spaces/p4.json", "spaces/p4.json"));
  CHECK(io::load_relation(scratch("rel.json")) == rel);

  CHECK(io::relative_ref(scratch("spaces/p4.json"), scratch("mods/m.json")) ==
        "../spaces/p4.json");
  CHECK_THROWS_AS(io::read_file(scratch("missing.json")), Error);
}

TEST_CASE("writers are byte stable") {
  auto s = gen(SpaceKind::cluster_space, {3});
  CHECK(io::space_json(s) == io::space_json(io::parse_space(io::space_json(s))));
}
