#include "twoscale/unit_cell.hpp"
#include "twoscale/growth.hpp"
#include "twoscale/parallel.hpp"

#include <cmath>
#include <sstream>

namespace twoscale {

UnitCellSolver::UnitCellSolver(const CellGeometry& geom, double edges_per_unit)
    : domain_(build_unit_cell(geom)),
      mesh_(std::make_unique<Mesh2D>(triangulate(domain_, edges_per_unit))),
      space_(std::make_unique<FESpace>(*mesh_, 2)) {
  // centroid of the period cell; zero for the centred hexagon
  double a = 0;
  Vec2 c = Vec2::Zero();
  const auto& poly = domain_.outer;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 &p = poly[i], &q = poly[(i + 1) % poly.size()];
    const double cr = p.x() * q.y() - p.y() * q.x();
    a += cr;
    c += (p + q) * cr;
  }
  mean_y_ = c / (3 * a);
}

ElementaryDeformations UnitCellSolver::solve_cell_problems(const ElasticTensor2D& e, const Mat2& fg) const {
  const FESpace& sp = *space_;
  const int nt = mesh_->num_triangles();
  const ElementCoefficients coef = ElementCoefficients::uniform(nt, e, fg);
  const SparseMatrix k = assemble_stiffness(sp, coef);

  Constraints cons;
  cons.periodic = sp.periodic_pairs();
  for (int c = 0; c < 2; ++c) {
    cons.integrals.push_back({mean_functional(sp, c), 0.0});
    cons.nullspace.push_back(translation_mode(sp, c));
  }
  const ConstrainedSolver solver(k, cons);

  static const std::array<Mat2, 3> b = [] {
    std::array<Mat2, 3> r;
    r[0] << 1, 0, 0, 0;
    r[1] << 0, 0, 0, 1;
    r[2] << 0, 0.5, 0.5, 0;
    return r;
  }();
  ElementaryDeformations defs;
  for (int ij = 0; ij < 3; ++ij) {
    Vector f = Vector::Zero(sp.num_dofs());
    const Mat2 load = -contract(e, b[ij]);
    add_stress_load(f, sp, coef.fg, [&](int, const Vec2&) { return load; });
    defs.w[ij] = solver.solve(f);
  }
  Vector f = Vector::Zero(sp.num_dofs());
  add_stress_load(f, sp, coef.fg, [](int, const Vec2&) { return Mat2(-Mat2::Identity()); });
  defs.v = solver.solve(f);
  return defs;
}

HomogenizedProps UnitCellSolver::effective_props(const ElementaryDeformations& defs, const ElasticTensor2D& e,
                                                 const Mat2& fg, double alpha) const {
  const FESpace& sp = *space_;
  const Mat2 finv = inverse_and_det(fg).inverse;
  const double area_y = domain_.area_cell;
  HomogenizedProps p;
  p.wall_fraction = domain_.wall_fraction();

  auto mean_d = [&](const Vector& u) {
    Mat2 g = Mat2::Zero();
    for (int t = 0; t < mesh_->num_triangles(); ++t) g += element_gradient_integral(sp, u, t);
    return Mat2(sym(g * finv) / area_y);
  };
  for (int ij = 0; ij < 3; ++ij) p.mean_dw[ij] = mean_d(defs.w[ij]);

  // E_hom,ijkl = mean(E (b_ij + d[w_ij]))_kl. By Galerkin orthogonality this
  // equals the energy form mean(E (b_ij + d[w_ij]) : (b_kl + d[w_kl])), which
  // is symmetric and only second-order sensitive to solver round-off.
  const Eigen::Matrix3d dv = e.voigt();
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const double area = mesh_->triangle_area(t);
    for (const auto& q : triangle_rule(4)) {
      Eigen::Matrix3d strain = Eigen::Matrix3d::Identity(); // columns: b_ij + d[w_ij] in (e11, e22, 2 e12)
      for (int ij = 0; ij < 3; ++ij) {
        const Mat2 g = sym(gradient_at(sp, defs.w[ij], t, q.bary) * finv);
        strain(0, ij) += g(0, 0);
        strain(1, ij) += g(1, 1);
        strain(2, ij) += 2 * g(0, 1);
      }
      d += (q.weight * area) * strain.transpose() * dv * strain;
    }
  }
  p.e_hom = ElasticTensor2D::from_voigt(d / area_y);
  p.mean_dv = mean_d(defs.v);
  p.k_hom = sym(contract(e, p.mean_dv));

  Vec2 acc = Vec2::Zero();
  for (const auto& be : mesh_->boundary_edges) {
    if (be.tag != BoundaryTag::CellInterface) continue;
    const Vec2 &a = mesh_->nodes[be.a], &b = mesh_->nodes[be.b];
    const Vec2 n = mesh_->outward_normal(be);
    const double len = (b - a).norm();
    for (const auto& [s, w] : edge_rule()) {
      const Vec2 y = a + s * (b - a);
      acc += (w * len * -(y.x() - mean_y_.x())) * n;
    }
  }
  p.p2vec = alpha * acc / area_y;
  return p;
}

PropertyRow property_row(double x, const HomogenizedProps& p, double wall_modulus) {
  const OrthotropicProps o = orthotropic_props(p.e_hom);
  return {x,
          o.e1 / wall_modulus,
          o.e2 / wall_modulus,
          o.nu12,
          o.g12 / wall_modulus,
          p.k_hom(0, 0),
          p.k_hom(1, 1),
          p.k_hom(0, 1),
          p.wall_fraction};
}

std::vector<double> SweepSpec::values() const {
  if (count < 1) throw InvalidInput("sweep count must be >= 1");
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  return v;
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InvalidInput("sweep must look like name=start:stop:count, got '" + text + "'");
  const std::string name = text.substr(0, eq);
  SweepSpec s;
  if (name == "w_over_l2") s.kind = SweepKind::WallThickness;
  else if (name == "g") s.kind = SweepKind::Growth;
  else throw InvalidInput("unknown sweep variable '" + name + "' (expected w_over_l2 or g)");
  std::istringstream is(text.substr(eq + 1));
  char c1 = 0, c2 = 0;
  if (!(is >> s.start >> c1 >> s.stop >> c2 >> s.count) || c1 != ':' || c2 != ':' || s.count < 1)
    throw InvalidInput("sweep must look like name=start:stop:count, got '" + text + "'");
  return s;
}

std::vector<PropertyRow> property_curves(const SweepSpec& sweep, const CellGeometry& base, double young, double poisson,
                                         double edges_per_unit, int threads) {
  const ElasticTensor2D e = isotropic_plane_stress(young, poisson);
  const auto xs = sweep.values();
  std::vector<PropertyRow> rows(xs.size());
  if (sweep.kind == SweepKind::WallThickness) {
    parallel_for(static_cast<int>(xs.size()), threads, [&](int i) {
      CellGeometry g = base;
      g.w = xs[i] * base.l2;
      const UnitCellSolver uc(g, edges_per_unit);
      rows[i] = property_row(xs[i], uc.compute(e, Mat2::Identity()), young);
    });
  } else {
    const UnitCellSolver uc(base, edges_per_unit);
    parallel_for(static_cast<int>(xs.size()), threads, [&](int i) {
      if (!(xs[i] >= 1)) throw InvalidInput("growth sweep needs g >= 1");
      Mat2 fg = Mat2::Identity();
      fg(0, 0) = xs[i];
      rows[i] = property_row(xs[i], uc.compute(e, fg), young);
    });
  }
  return rows;
}

} // namespace twoscale
