#include "twoscale/unit_cell.hpp"

#include <doctest.h>

#include <cmath>

using namespace twoscale;
using doctest::Approx;

namespace {
const ElasticTensor2D kWall = isotropic_plane_stress(1, 0.3);

Mat2 diag(double a, double b) {
  Mat2 m;
  m << a, 0, 0, b;
  return m;
}
} // namespace

TEST_CASE("solid cell reproduces the wall material") {
  const UnitCellSolver uc({1, 1, 30, 1.0}, 8);
  const auto defs = uc.solve_cell_problems(kWall, Mat2::Identity());
  for (const auto& w : defs.w) CHECK(w.cwiseAbs().maxCoeff() < 1e-10);
  const auto p = uc.compute(kWall, Mat2::Identity());
  for (int i = 0; i < 6; ++i) CHECK(std::abs(p.e_hom.c[i] - kWall.c[i]) < 1e-10);
  CHECK(p.k_hom.norm() < 1e-10);
  CHECK(p.wall_fraction == Approx(1));
}

TEST_CASE("regular hexagon is isotropic and the walls bend") {
  const UnitCellSolver uc({1, 1, 30, 0.05}, 25);
  const auto defs = uc.solve_cell_problems(kWall, Mat2::Identity());
  CHECK(defs.w[0].norm() > 0);
  const auto p = uc.effective_props(defs, kWall, Mat2::Identity(), 0);
  const auto o = orthotropic_props(p.e_hom);
  CHECK(std::abs(o.e1 - o.e2) <= 1e-3 * o.e1);
  CHECK(std::abs(p.k_hom(0, 0) - p.k_hom(1, 1)) <= 1e-3 * std::abs(p.k_hom(0, 0)));
  CHECK(std::abs(p.k_hom(0, 1)) <= 1e-6 * std::abs(p.k_hom(0, 0)));
  // pressure pushes the cell outward: K is negative definite
  CHECK(p.k_hom(0, 0) < 0);
  CHECK(is_positive_definite(p.e_hom));
}

TEST_CASE("isotropic growth leaves the effective tensors unchanged") {
  const UnitCellSolver uc({1, 1, 30, 0.05}, 25);
  const auto p1 = uc.compute(kWall, Mat2::Identity());
  for (double g : {1.5, 2.0}) {
    const auto pg = uc.compute(kWall, g * Mat2::Identity());
    for (int i = 0; i < 6; ++i) CHECK(std::abs(pg.e_hom.c[i] - p1.e_hom.c[i]) <= 1e-6 * p1.e_hom.e1111());
    CHECK((pg.k_hom - p1.k_hom).norm() <= 1e-6 * p1.k_hom.norm());
  }
}

TEST_CASE("elongated cell is softer along x1") {
  const auto ref = orthotropic_props(UnitCellSolver({1, 1, 30, 0.05}, 25).compute(kWall, Mat2::Identity()).e_hom);
  const auto tall = orthotropic_props(UnitCellSolver({2, 1, 30, 0.05}, 25).compute(kWall, Mat2::Identity()).e_hom);
  CHECK(tall.e1 < ref.e1);
}

TEST_CASE("anisotropic growth trends") {
  const UnitCellSolver uc({1, 1, 30, 0.05}, 25);
  PropertyRow prev{};
  bool first = true;
  for (double g : {1.0, 1.5, 2.0, 3.0}) {
    const auto r = property_row(g, uc.compute(kWall, diag(g, 1)), 1.0);
    if (!first) {
      CHECK(r.e1 > prev.e1);
      CHECK(r.e2 < prev.e2);
      CHECK(std::abs(r.k11) < std::abs(prev.k11));
      CHECK(std::abs(r.k22) > std::abs(prev.k22));
      CHECK(r.nu12 > prev.nu12);
    }
    prev = r;
    first = false;
  }
}

TEST_CASE("w/l2 sweep approaches the wall material") {
  const auto rows = property_curves(parse_sweep("w_over_l2=0.05:1.0:5"), {1, 1, 30, 0.05}, 1, 0.3, 12);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].e1 > rows[i - 1].e1);
  CHECK(rows.back().e1 == Approx(1).epsilon(1e-8));
  CHECK(std::abs(rows.back().k11) < 1e-8);
  CHECK_THROWS_AS(parse_sweep("h=0:1:3"), InvalidInput);
  CHECK_THROWS_AS(parse_sweep("w_over_l2=0:1"), InvalidInput);
}
