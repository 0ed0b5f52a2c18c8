#include <filesystem>
#include <sstream>

#include "coarsekit_cli/cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using testing_support::fixture;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = coarsekit_cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "coarsekit_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("analyze reports propagation") {
  auto r = cli({"analyze", "--op", fixture("shift_op.json"), "--radii", "0,1,2"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["propagation"].get<double>() == 1.0);
  CHECK(j["ql"].size() == 3);
  CHECK(j["app"].size() == 3);
}

TEST_CASE("cover then phi above one is empty") {
  const std::string op = tmp("halving_cover.json");
  auto c = cli({"cover", "--map", fixture("halving_map.json"), "--src-mult", fixture("p32_m1.json"),
                "--tgt-mult", fixture("p16_m2.json"), "-o", op});
  REQUIRE(c.code == 0);
  auto p = cli({"phi", "--op", op, "--delta", "1.1"});
  REQUIRE(p.code == 0);
  auto j = json::parse(p.out);
  CHECK(j["pairs"].empty());
  CHECK(j["domain_covering_radius"] == "inf");
}

TEST_CASE("roundtrip on the halving map") {
  auto r = cli({"roundtrip", "--map", fixture("halving_map.json"), "--src-mult",
                fixture("p32_m1.json"), "--tgt-mult", fixture("p16_m2.json")});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["recovered_gap"].get<double>() <= 2.0);
  CHECK(j["inverse_gap_x"].is_number());
  CHECK(j["inverse_gap_y"].is_number());
}

TEST_CASE("hall violation is reported on stderr") {
  auto r = cli({"cover", "--map", fixture("collapse_map.json"), "--src-mult", fixture("p4_m1.json"),
                "--tgt-mult", fixture("p4_m1.json")});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  auto j = json::parse(r.err);
  CHECK(j["error"] == "hall_violation");
  CHECK(j["witness"]["source_points"].size() == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"cover"}).code == 2);
  CHECK(cli({"analyze", "--op"}).code == 2);
  CHECK(cli({"--threads", "0", "analyze", "--op", fixture("shift_op.json")}).code == 2);
  auto missing = cli({"analyze", "--op", tmp("nope.json")});
  CHECK(missing.code == 1);
  CHECK(json::parse(missing.err)["error"] == "io_error");
}

TEST_CASE("gen-space writes a distance matrix") {
  auto r = cli({"gen-space", "--kind", "path", "--params", "3"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["points"].size() == 3);
  CHECK(j["dist"][0][2].get<double>() == 2.0);
  CHECK(cli({"gen-space", "--kind", "path", "--params", "0"}).code == 1);
}

TEST_CASE("concentration finds the clique witness") {
  auto r = cli({"concentration", "--op", fixture("cliques_op.json"), "--partition",
                fixture("cliques_partition.json"), "--B", "6", "--C", "6", "--eps", "0.03"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.contains("witness"));
  CHECK(j["witness"]["achieved"].get<double>() > j["bound"].get<double>());
}

TEST_CASE("probe writes csv") {
  auto r = cli({"probe-uniformization", "--op", fixture("shift_op.json"), "--r", "0,1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("r,R,exactness\n", 0) == 0);
}
