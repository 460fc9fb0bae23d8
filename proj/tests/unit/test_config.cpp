#include "twoscale/config.hpp"
#include "twoscale/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twoscale;

TEST_CASE("empty config is the reference configuration") {
  const SimulationConfig c = parse_config_text("");
  const ModelParams& m = c.model;
  CHECK(m.young == LinearField(1.0));
  CHECK(m.poisson == LinearField(0.3));
  CHECK(m.l1 == 1);
  CHECK(m.l2 == LinearField(1.0));
  CHECK(m.w == LinearField(0.05));
  CHECK(m.theta_deg == 30);
  CHECK(m.eta == LinearField(1.0));
  CHECK(m.tau == LinearField(0.0));
  CHECK(m.pressure == LinearField(0.001));
  CHECK(m.Nx == 16);
  CHECK(m.dt == 1);
  CHECK(m.t_max == 60);
  CHECK(m.law == GrowthLaw::Strain);
}

TEST_CASE("config keys") {
  CHECK(parse_config_text("growth.law: stress").model.law == GrowthLaw::Stress);
  CHECK(parse_config_text("growth:\n  law: stress\n").model.law == GrowthLaw::Stress);
  CHECK(parse_config_text("material.E: [0.5, 1.5]").model.young == LinearField(0.5, 1.5));
  CHECK(parse_config_text("traction: [0, 0.01]").model.traction.y() == 0.01);
  auto message = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const InvalidInput& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("material.nu: 0.7").find("material.nu") != std::string::npos);
  CHECK(message("material.zeta: 1").find("material.zeta") != std::string::npos);
  CHECK(message("tissue.Nx: 7").find("tissue.Nx") != std::string::npos);
  CHECK(message("time.dt: 0").find("time.dt") != std::string::npos);
  CHECK(message("growth.law: fast").find("growth.law") != std::string::npos);
  CHECK(message("material.E: [1, 2, 3]").find("material.E") != std::string::npos);
  CHECK(message("geometry.w: 1.5").find("geometry") != std::string::npos);
  CHECK_FALSE(message("material: [").empty());
}

TEST_CASE("config round trip and hash") {
  SimulationConfig c;
  c.model.young = LinearField(0.5, 1.5);
  c.model.poisson = LinearField(0.1 + 0.2);
  c.model.law = GrowthLaw::Stress;
  c.model.traction = Vec2(0.0, 1.0 / 3.0);
  c.model.Nx = 8;
  c.out_dir = "some dir/with: colon";
  c.snapshots = {0, 30, 60};
  const SimulationConfig back = parse_config_text(emit_config(c));
  CHECK(same_config(c, back));
  CHECK(back.model.poisson.lo == c.model.poisson.lo);
  CHECK(back.model.traction.y() == c.model.traction.y());
  CHECK(back.out_dir == c.out_dir);
  CHECK(config_hash(c) == config_hash(back));
  CHECK(config_hash(c).size() == 16);
  SimulationConfig d = c;
  d.model.t_max = 59;
  CHECK(config_hash(c) != config_hash(d));
}

TEST_CASE("csv and vtk output") {
  const auto dir = std::filesystem::temp_directory_path() / "twoscale_io_test";
  ensure_directory(dir.string());
  CsvTable t({"a", "b"});
  t.row(std::vector<double>{1, 0.5});
  CHECK_THROWS_AS(t.row(std::vector<double>{1}), InvalidInput);
  t.write((dir / "t.csv").string(), "00ff");
  std::ifstream in(dir / "t.csv");
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1 == "# config_hash=00ff");
  CHECK(l2 == "a,b");
  CHECK(l3 == "1,0.5");

  Mesh2D m;
  m.nodes = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  m.triangles = {{0, 1, 2}};
  m.region = {0};
  Vector u = Vector::Zero(6);
  write_vtk((dir / "m.vtk").string(), m, {displacement_field(m, u)}, tensor_fields("Fg", {Mat2::Identity()}));
  std::ifstream v(dir / "m.vtk");
  std::stringstream ss;
  ss << v.rdbuf();
  CHECK(ss.str().rfind("# vtk DataFile Version 3.0", 0) == 0);
  CHECK(ss.str().find("CELL_TYPES 1") != std::string::npos);
  CHECK(ss.str().find("SCALARS Fg_det double 1") != std::string::npos);
  CHECK_THROWS_AS(write_vtk((dir / "bad.vtk").string(), m, {{"x", {1, 2}, 1}}, {}), InvalidInput);
  std::filesystem::remove_all(dir);
}
