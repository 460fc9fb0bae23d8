#include "../support/oracles.hpp"
#include "twoscale/geometry.hpp"

#include <doctest.h>

#include <cmath>

using namespace twoscale;
using doctest::Approx;

TEST_CASE("CST stiffness matches the closed form") {
  const std::array<Vec2, 3> x{Vec2(0.1, 0.2), Vec2(1.3, 0.4), Vec2(0.5, 1.7)};
  CHECK(oracle::cst_mismatch(x, isotropic_plane_stress(1, 0)) < 1e-12);
  CHECK(oracle::cst_mismatch(x, isotropic_plane_stress(2.5, 0.3)) < 1e-12);
}

TEST_CASE("stiffness with Fg = I is symmetric with rigid-mode kernel") {
  const Mesh2D m = build_rect_mesh(1, 1, 0.25);
  for (int order : {1, 2}) {
    const FESpace sp(m, order);
    const SparseMatrix k = assemble_stiffness(sp, ElementCoefficients::uniform(m.num_triangles(), isotropic_plane_stress(1, 0.3)));
    CHECK((Eigen::MatrixXd(k) - Eigen::MatrixXd(k).transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (const Vector& r : {translation_mode(sp, 0), translation_mode(sp, 1), rotation_mode(sp)})
      CHECK((k * r).norm() < 1e-10);
  }
}

TEST_CASE("stiffness rejects shrinking growth") {
  const Mesh2D m = build_rect_mesh(1, 1, 0.5);
  const FESpace sp(m, 1);
  CHECK_THROWS(assemble_stiffness(sp, ElementCoefficients::uniform(m.num_triangles(), isotropic_plane_stress(1, 0.3),
                                                                   0.9 * Mat2::Identity())));
}

TEST_CASE("manufactured solution convergence") {
  const auto e = isotropic_plane_stress(1, 0.3);
  const auto p1 = oracle::manufactured_convergence(1, {4, 8, 16}, e);
  const auto p2 = oracle::manufactured_convergence(2, {4, 8, 16}, e);
  for (double o : p1.order) CHECK(o > 1.8);
  for (double o : p2.order) CHECK(o > 2.8);
}

TEST_CASE("pure Neumann square with rigid modes removed") {
  const Mesh2D m = build_rect_mesh(1, 1, 0.25);
  const FESpace sp(m, 1);
  const auto e = isotropic_plane_stress(1, 0.3);
  const SparseMatrix k = assemble_stiffness(sp, ElementCoefficients::uniform(m.num_triangles(), e));
  Constraints cons;
  cons.integrals = {{mean_functional(sp, 0), 0}, {mean_functional(sp, 1), 0}, {rotation_functional(sp), 0}};
  CHECK(solve_constrained(k, Vector::Zero(sp.num_dofs()), cons).norm() == 0);
  // uniform prestress sigma = I: self-equilibrated, gives uniform expansion
  Vector f = Vector::Zero(sp.num_dofs());
  add_stress_load(f, sp, std::vector<Mat2>(m.num_triangles(), Mat2::Identity()),
                  [](int, const Vec2&) { return Mat2(Mat2::Identity()); });
  const Vector u = solve_constrained(k, f, cons);
  CHECK(std::abs(mean_functional(sp, 0).dot(u)) < 1e-12);
  CHECK(std::abs(rotation_functional(sp).dot(u)) < 1e-12);
  const auto ss = evaluate_strain_stress(sp, u, ElementCoefficients::uniform(m.num_triangles(), e));
  for (const auto& s : ss) CHECK((s.stress - Mat2::Identity()).norm() < 1e-9);
}

TEST_CASE("laterally confined plane-stress column under a top pressure") {
  const double E = 2, nu = 0.3, p = 0.01;
  const Mesh2D m = build_rect_mesh(1, 2, 0.25);
  for (int order : {1, 2}) {
    const FESpace sp(m, order);
    const SparseMatrix k = assemble_stiffness(sp, ElementCoefficients::uniform(m.num_triangles(), isotropic_plane_stress(E, nu)));
    Vector f = Vector::Zero(sp.num_dofs());
    add_edge_load(
        f, sp, [](const BoundaryEdge& be) { return be.tag == BoundaryTag::OuterOther; },
        [&](const BoundaryEdge&, const Vec2& x) { return Vec2(0, x.y() > 2 - 1e-9 ? -p : 0.0); });
    Constraints cons;
    for (int s = 0; s < sp.num_scalar_nodes(); ++s) {
      const Vec2& x = sp.points()[s];
      if (x.y() < 1e-12) cons.fixed.push_back({2 * s + 1, 0.0});
      if (x.x() < 1e-12 || x.x() > 1 - 1e-12) cons.fixed.push_back({2 * s, 0.0});
    }
    const Vector u = solve_constrained(k, f, cons);
    const auto ss = evaluate_strain_stress(sp, u, ElementCoefficients::uniform(m.num_triangles(), isotropic_plane_stress(E, nu)));
    for (const auto& s : ss) CHECK(s.strain(1, 1) == Approx(-p * (1 - nu * nu) / E).epsilon(1e-8));
  }
}

TEST_CASE("elastic strain evaluation") {
  const Mesh2D m = build_rect_mesh(1, 1, 0.5);
  const FESpace sp(m, 1);
  const auto e = isotropic_plane_stress(1, 0);
  const Vector zero = Vector::Zero(sp.num_dofs());
  for (const auto& s : evaluate_strain_stress(sp, zero, ElementCoefficients::uniform(m.num_triangles(), e)))
    CHECK(s.strain.norm() == 0);
  Mat2 g;
  g << 2, 0, 0, 1;
  for (const auto& s : evaluate_strain_stress(sp, zero, ElementCoefficients::uniform(m.num_triangles(), e, g))) {
    CHECK(s.strain(0, 0) == Approx(-0.5));
    CHECK(s.strain(1, 1) == Approx(0).epsilon(1e-15));
  }
  Vector u = zero;
  for (int n = 0; n < m.num_nodes(); ++n) u[2 * n] = 0.1 * m.nodes[n].x();
  for (const auto& s : evaluate_strain_stress(sp, u, ElementCoefficients::uniform(m.num_triangles(), e))) {
    CHECK(s.strain(0, 0) == Approx(0.1));
    CHECK(std::abs(s.strain(1, 1)) < 1e-14);
  }
}

TEST_CASE("zero load gives zero displacement") {
  const Mesh2D m = build_rect_mesh(2, 1, 0.25);
  const FESpace sp(m, 2);
  const SparseMatrix k = assemble_stiffness(sp, ElementCoefficients::uniform(m.num_triangles(), isotropic_plane_stress(1, 0.3)));
  Constraints cons;
  for (int s = 0; s < sp.num_scalar_nodes(); ++s)
    if (sp.points()[s].y() < 1e-12) cons.fixed.push_back({2 * s + 1, 0.0});
  cons.integrals.push_back({mean_functional(sp, 0), 0.0});
  cons.nullspace.push_back(translation_mode(sp, 0));
  CHECK(solve_constrained(k, Vector::Zero(sp.num_dofs()), cons).norm() == 0);
}
