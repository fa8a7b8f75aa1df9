#include "lgc/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace lgc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "lgc_test_io";
  fs::create_directories(dir);
  return dir;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("FNV-1a test vectors") {
  CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
}

TEST_CASE("JSON numbers keep 17 significant digits") {
  Json j;
  j["x"] = 0.1;
  j["pi"] = std::numbers::pi;
  j["v"] = Json::array({1, 2, 3});
  const std::string text = dump_json(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("3.1415926535897931") != std::string::npos);
  CHECK(Json::parse(text)["pi"].get<double>() == std::numbers::pi);
  CHECK(dump_json(Json::parse(text)) == text);
}

TEST_CASE("geometry document round-trips bit for bit") {
  for (int n : {1, 2, 5}) {
    const GeometryDocument doc = build_geometry(n);
    CHECK(doc.arcs.size() == (std::size_t{1} << n));
    CHECK(doc.components.size() == (std::size_t{1} << n));
    const std::string text = dump_json(geometry_to_json(doc));
    const GeometryDocument back = geometry_from_json(Json::parse(text));
    CHECK(dump_json(geometry_to_json(back)) == text);
    for (std::size_t i = 0; i < doc.components.size(); ++i) {
      const auto& a = doc.components[i];
      const auto& b = back.components[i];
      CHECK(a.address == b.address);
      REQUIRE(a.polygons.size() == b.polygons.size());
      for (std::size_t k = 0; k < a.polygons.size(); ++k) CHECK(a.polygons[k].vertices() == b.polygons[k].vertices());
      CHECK(a.bottom.x_lo == b.bottom.x_lo);
      CHECK(a.area() == b.area());
    }
  }
  CHECK(build_geometry(2).components[0].chain().size() == 4);
  CHECK_THROWS_AS(build_geometry(0), std::invalid_argument);
  CHECK_THROWS_AS(build_geometry(13), std::invalid_argument);
}

TEST_CASE("geometry files on disk") {
  const fs::path p = scratch_dir() / "b3.json";
  write_text(p, dump_json(geometry_to_json(build_geometry(3))));
  const GeometryDocument back = geometry_from_json(read_json(p));
  CHECK(back.depth == 3);
  CHECK_THROWS_AS(geometry_from_json(Json::parse(R"({"format": "other"})")), IoError);
  CHECK_THROWS_AS(read_json(scratch_dir() / "missing.json"), IoError);
  write_text(scratch_dir() / "broken.json", "{ not json");
  CHECK_THROWS_AS(read_json(scratch_dir() / "broken.json"), IoError);
  CHECK_THROWS_AS(write_text(scratch_dir() / "no" / "such" / "dir.json", "x"), IoError);
}

TEST_CASE("SVG rendering") {
  const std::string plain = render_svg(1);
  CHECK(plain.rfind("<svg", 0) == 0);
  CHECK(count(plain, "<text") == 0);
  CHECK(count(plain, "<circle") == 1);
  const std::string labelled = render_svg(1, {800.0, true});
  // W, T_0 and Bot for each of the two components.
  CHECK(count(labelled, "<text") == 6);
  CHECK(count(render_svg(2, {800.0, true}), "<text") == 16);
  CHECK_THROWS_AS(render_svg(9), std::invalid_argument);
  CHECK(render_svg(3) == render_svg(3));
}

TEST_CASE("experiment CSV round-trips") {
  std::vector<ExperimentRow> rows{{0, 256, 0.95410630000000004, 0.958851077208406, 1.0, 0.288788095086602, 0.0823, 8900, true},
                                  {1, 256, 0.5, 0.49869, 0.5, 0.288788095086602, 0.0, 20000, false}};
  const std::string csv = experiment_csv(rows, "lgc experiment --depth 1");
  CHECK(csv.rfind("# lgc experiment --depth 1\nn,resolution,energy,chord_sum_reference,K_n,K_inf,l1_mass,iterations,converged\n",
                  0) == 0);
  const auto back = parse_experiment_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[0].energy == rows[0].energy);
  CHECK(back[0].K_inf == rows[0].K_inf);
  CHECK(back[1].converged == false);
  CHECK(back[1].iterations == 20000);
  CHECK(experiment_csv(back, "lgc experiment --depth 1") == csv);
  CHECK_THROWS_AS(parse_experiment_csv("a,b\n1,2\n"), IoError);
  CHECK_THROWS_AS(parse_experiment_csv(experiment_csv({}) + "1,2,3\n"), IoError);
}

TEST_CASE("field dumps round-trip") {
  GridField f;
  f.nx = 5;
  f.ny = 3;
  f.h = 0.25;
  f.x0 = -0.625;
  f.y0 = -0.375;
  for (int k = 0; k < 15; ++k) f.values.push_back(std::sin(0.7 * k) / 3.0);
  const fs::path stem = scratch_dir() / "field";
  write_field(stem, f, Json{{"note", "test"}});
  CHECK(fs::file_size(fs::path(stem.string() + ".bin")) == 15 * 8);
  const GridField g = read_field(stem);
  CHECK(g.nx == 5);
  CHECK(g.ny == 3);
  CHECK(g.h == f.h);
  CHECK(g.x0 == f.x0);
  CHECK(g.values == f.values);
  CHECK(read_json(stem.string() + ".json")["meta"]["note"] == "test");

  GridField bad = f;
  bad.values.pop_back();
  CHECK_THROWS_AS(write_field(stem, bad), std::invalid_argument);
  fs::resize_file(fs::path(stem.string() + ".bin"), 8);
  CHECK_THROWS_AS(read_field(stem), IoError);
}

TEST_CASE("verify report layout") {
  Check ok;
  ok.name = "a";
  ok.lhs = 2;
  ok.rhs = 1;
  Check bad = ok;
  bad.name = "b";
  bad.lhs = 0;
  const Json r = verify_report("demo", {{"demo", ok}, {"demo", bad}});
  CHECK(r["suite"] == "demo");
  CHECK(r["passed"] == false);
  CHECK(r["check_count"] == 2);
  CHECK(r["failed_count"] == 1);
  CHECK(r["checks"].size() == 2);
  CHECK(r["checks"][1]["name"] == "b");
  CHECK(r["inputs_hash"].get<std::string>().size() == 16);
  CHECK(dump_json(verify_report("demo", {{"demo", ok}})) == dump_json(verify_report("demo", {{"demo", ok}})));
}
