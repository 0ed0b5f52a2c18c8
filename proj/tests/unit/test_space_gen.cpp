#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

TEST_CASE("paths, cycles and grids") {
  auto p = gen(SpaceKind::path, {4});
  CHECK(p.d(0, 3) == 3.0);
  auto c = gen(SpaceKind::cycle, {6});
  CHECK(c.d(0, 5) == 1.0);
  CHECK(c.diameter() == 3.0);
  auto g = gen(SpaceKind::grid2d, {3, 2});
  CHECK(g.size() == 6);
  CHECK(g.diameter() == 3.0);
  CHECK(g.label(0) == "0,0");
}

TEST_CASE("cluster space") {
  auto s = gen(SpaceKind::cluster_space, {3});
  CHECK(s.labels() == std::vector<std::string>{"1", "2a", "2b", "3a", "3b", "3c"});
  CHECK(s.d(1, 2) == 1.0);
  CHECK(s.d(0, 1) == 1.0);
  CHECK(s.d(0, 3) == 2.0);
  CHECK(s.d(4, 5) == 1.0);
  CHECK(s.d(1, 5) == 1.0);
}

TEST_CASE("disjoint families") {
  auto s = gen(SpaceKind::disjoint_cliques, {2, 4, 8});
  CHECK(s.component_count() == 3);
  for (int comp = 0; comp < 3; ++comp) CHECK(s.diameter(s.component_points(comp)) == 1.0);
  CHECK(s.label(2) == "G1.0");
  auto d = gen(SpaceKind::disjoint_points, {5});
  CHECK(d.component_count() == 5);
}

TEST_CASE("random regular graphs") {
  auto a = gen(SpaceKind::random_regular, {12, 3}, 42);
  auto b = gen(SpaceKind::random_regular, {12, 3}, 42);
  CHECK(a == b);
  int degree_ok = 0;
  for (int x = 0; x < 12; ++x) {
    int deg = 0;
    for (int y = 0; y < 12; ++y) deg += a.d(x, y) == 1.0;
    degree_ok += deg == 3;
  }
  CHECK(degree_ok == 12);
  CHECK_THROWS_AS(gen(SpaceKind::random_regular, {5, 3}, 0), Error);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(gen(SpaceKind::path, {0}), Error);
  CHECK_THROWS_AS(gen(SpaceKind::path, {}), Error);
  CHECK_THROWS_AS(gen(SpaceKind::grid2d, {3}), Error);
  CHECK_THROWS_AS(gen(SpaceKind::disjoint_cliques, {2, 0}), Error);
  CHECK_THROWS_AS(space_kind_from_string("torus"), Error);
  CHECK(space_kind_from_string(to_string(SpaceKind::cluster_space)) == SpaceKind::cluster_space);
}

TEST_CASE("generated spaces are valid metrics") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = gen(SpaceKind::random_regular, {10, 4}, seed);
    for (int x = 0; x < 10; ++x)
      for (int y = 0; y < 10; ++y)
        for (int z = 0; z < 10; ++z) CHECK(s.d(x, z) <= s.d(x, y) + s.d(y, z));
  }
}
