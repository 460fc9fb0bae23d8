#include "oracles.hpp"

#include "twoscale/geometry.hpp"

#include <cmath>
#include <numbers>

namespace twoscale::oracle {

Eigen::Matrix<double, 6, 6> cst_stiffness(const std::array<Vec2, 3>& x, const ElasticTensor2D& e) {
  const double x1 = x[0].x(), y1 = x[0].y(), x2 = x[1].x(), y2 = x[1].y(), x3 = x[2].x(), y3 = x[2].y();
  const double area = 0.5 * ((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1));
  Eigen::Matrix<double, 3, 6> b;
  b << y2 - y3, 0, y3 - y1, 0, y1 - y2, 0,
       0, x3 - x2, 0, x1 - x3, 0, x2 - x1,
       x3 - x2, y2 - y3, x1 - x3, y3 - y1, x2 - x1, y1 - y2;
  b /= 2 * area;
  return area * b.transpose() * e.voigt() * b;
}

double cst_mismatch(const std::array<Vec2, 3>& x, const ElasticTensor2D& e) {
  Mesh2D m;
  m.nodes = {x[0], x[1], x[2]};
  m.triangles = {{0, 1, 2}};
  m.region = {0};
  const FESpace sp(m, 1);
  const Eigen::MatrixXd k(assemble_stiffness(sp, ElementCoefficients::uniform(1, e)));
  const Eigen::Matrix<double, 6, 6> ref = cst_stiffness(x, e);
  return (k - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
}

Convergence manufactured_convergence(int fe_order, const std::vector<int>& cells_per_side, const ElasticTensor2D& e) {
  constexpr double pi = std::numbers::pi;
  auto exact = [](const Vec2& p) { return Vec2(std::sin(pi * p.x()) * std::sin(pi * p.y()), 0.0); };
  // -div sigma for the field above, Voigt order (11, 22, 2*12)
  const double c11 = e.e1111(), c12 = e.e1122(), c66 = e.e1212();
  auto force = [&](const Vec2& p) {
    const double ss = std::sin(pi * p.x()) * std::sin(pi * p.y());
    const double cc = std::cos(pi * p.x()) * std::cos(pi * p.y());
    return Vec2((c11 + c66) * pi * pi * ss, -(c12 + c66) * pi * pi * cc);
  };
  Convergence c;
  for (int n : cells_per_side) {
    const Mesh2D mesh = build_rect_mesh(1.0, 1.0, 1.0 / n);
    const FESpace sp(mesh, fe_order);
    const SparseMatrix k = assemble_stiffness(sp, ElementCoefficients::uniform(mesh.num_triangles(), e));
    Vector f = Vector::Zero(sp.num_dofs());
    add_body_force(f, sp, [&](int, const Vec2& x) { return force(x); });
    Constraints cons;
    std::vector<char> fixed(sp.num_scalar_nodes(), 0);
    for (const auto& be : mesh.boundary_edges)
      for (int s : sp.edge_nodes(be)) fixed[s] = 1;
    for (int s = 0; s < sp.num_scalar_nodes(); ++s)
      if (fixed[s]) {
        cons.fixed.push_back({2 * s, 0.0});
        cons.fixed.push_back({2 * s + 1, 0.0});
      }
    const Vector u = solve_constrained(k, f, cons, 1e-10);
    double err = 0;
    for (int t = 0; t < mesh.num_triangles(); ++t)
      for (const auto& q : triangle_rule(4)) {
        const Vec2 d = value_at(sp, u, t, q.bary) - exact(sp.map_point(t, q.bary));
        err += q.weight * mesh.triangle_area(t) * d.squaredNorm();
      }
    c.h.push_back(1.0 / n);
    c.error.push_back(std::sqrt(err));
  }
  for (std::size_t i = 1; i < c.error.size(); ++i)
    c.order.push_back(std::log(c.error[i - 1] / c.error[i]) / std::log(c.h[i - 1] / c.h[i]));
  return c;
}

} // namespace twoscale::oracle
