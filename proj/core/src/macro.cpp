#include "twoscale/macro.hpp"
#include "twoscale/growth.hpp"

#include <cmath>

namespace twoscale {

MacroFields MacroFields::uniform(int num_elements, const HomogenizedProps& p, const Mat2& fg) {
  return {std::vector<HomogenizedProps>(num_elements, p), std::vector<Mat2>(num_elements, fg)};
}

HomogenizedProps blend(const std::vector<const HomogenizedProps*>& p, const std::vector<double>& w) {
  HomogenizedProps r;
  r.wall_fraction = 0;
  for (double& c : r.e_hom.c) c = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const HomogenizedProps& q = *p[k];
    for (int i = 0; i < 6; ++i) r.e_hom.c[i] += w[k] * q.e_hom.c[i];
    r.k_hom += w[k] * q.k_hom;
    r.p2vec += w[k] * q.p2vec;
    r.wall_fraction += w[k] * q.wall_fraction;
    for (int ij = 0; ij < 3; ++ij) r.mean_dw[ij] += w[k] * q.mean_dw[ij];
    r.mean_dv += w[k] * q.mean_dv;
  }
  return r;
}

MacroModel::MacroModel(const ModelParams& params, Mesh2D mesh, double width)
    : params_(params), mesh_(std::make_unique<Mesh2D>(std::move(mesh))), width_(width) {
  space_ = std::make_unique<FESpace>(*mesh_, 1);
  std::vector<char> seen(mesh_->num_nodes(), 0);
  for (const auto& e : mesh_->boundary_edges)
    if (e.tag == BoundaryTag::OuterBottom)
      for (int n : {e.a, e.b})
        if (!seen[n]) {
          seen[n] = 1;
          bottom_nodes_.push_back(n);
        }
}

Vector MacroModel::solve(const MacroFields& fields, SolveReport* report) const {
  const FESpace& sp = *space_;
  const int nt = mesh_->num_triangles();
  if (static_cast<int>(fields.props.size()) != nt || static_cast<int>(fields.fg.size()) != nt)
    throw InvalidInput("macro fields must be given per fine element");

  ElementCoefficients coef;
  coef.fg = fields.fg;
  coef.tensor.resize(nt);
  std::vector<InverseDet> inv(nt);
  for (int t = 0; t < nt; ++t) {
    coef.tensor[t] = fields.props[t].e_hom;
    inv[t] = inverse_and_det(fields.fg[t]);
  }
  const SparseMatrix k = assemble_stiffness(sp, coef);

  const Vec2 grad_p(params_.pressure.slope(width_), 0.0);
  Vector f = Vector::Zero(sp.num_dofs());
  // E_hom [I - sym(Fg^-1)] - (K_hom + (wf - 1) I) P1
  add_stress_load(f, sp, coef.fg, [&](int t, const Vec2& x) {
    const HomogenizedProps& p = fields.props[t];
    const Mat2 pre = contract(p.e_hom, Mat2::Identity() - sym(inv[t].inverse));
    return Mat2(pre - (p.k_hom + (p.wall_fraction - 1.0) * Mat2::Identity()) * pressure_at(x));
  });
  // J Fg^-T [(1 - wf) grad P1 - P2vec]
  add_body_force(f, sp, [&](int t, const Vec2&) {
    const HomogenizedProps& p = fields.props[t];
    return Vec2(inv[t].det * (inv[t].inverse.transpose() * ((1.0 - p.wall_fraction) * grad_p - p.p2vec)));
  });
  const Vec2 traction = params_.traction;
  if (traction.squaredNorm() > 0)
    add_edge_load(
        f, sp, [](const BoundaryEdge& e) { return e.tag == BoundaryTag::OuterOther; },
        [&](const BoundaryEdge& e, const Vec2&) {
          const InverseDet& d = inv[e.triangle];
          return Vec2(d.det * (d.inverse.transpose() * mesh_->outward_normal(e)).norm() * traction);
        });

  Constraints cons;
  for (int n : bottom_nodes_) cons.fixed.push_back({2 * n + 1, 0.0});
  cons.integrals.push_back({mean_functional(sp, 0), 0.0});
  cons.nullspace.push_back(translation_mode(sp, 0));
  return solve_constrained(k, f, cons, 1e-10, report);
}

std::vector<HomStressStrain> MacroModel::hom_stress_strain(const Vector& u, const MacroFields& fields) const {
  const int nt = mesh_->num_triangles();
  std::vector<HomStressStrain> out(nt);
  for (int t = 0; t < nt; ++t) {
    const HomogenizedProps& p = fields.props[t];
    const Mat2 finv = inverse_and_det(fields.fg[t]).inverse;
    const Mat2 grad = element_gradient_integral(*space_, u, t) / mesh_->triangle_area(t);
    const Mat2 eps = sym(grad * finv) + sym(finv) - Mat2::Identity();
    const double p1 = pressure_at(mesh_->centroid(t));
    out[t].strain = p.wall_fraction * eps + p.mean_dw[0] * eps(0, 0) + p.mean_dw[1] * eps(1, 1) +
                    p.mean_dw[2] * (2 * eps(0, 1)) + p.mean_dv * p1;
    out[t].stress = contract(p.e_hom, eps) + p.k_hom * p1;
  }
  return out;
}

std::vector<Mat2> MacroModel::growth_rates(const std::vector<HomStressStrain>& hs, const MacroFields& fields) const {
  std::vector<Mat2> g(hs.size());
  for (std::size_t t = 0; t < hs.size(); ++t) {
    const GrowthParams gp = params_.growth_at(mesh_->centroid(static_cast<int>(t)).x(), width_);
    const Mat2& x = gp.law == GrowthLaw::Stress ? hs[t].stress : hs[t].strain;
    g[t] = growth_rate(x / fields.props[t].wall_fraction, gp);
  }
  return g;
}

double MacroModel::mean_growth_rate(const std::vector<Mat2>& g) const {
  double s = 0, a = 0;
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const double w = mesh_->triangle_area(t);
    s += w * 0.5 * g[t].trace();
    a += w;
  }
  return s / a;
}

double MacroModel::mean_det(const std::vector<Mat2>& fg) const {
  double s = 0, a = 0;
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const double w = mesh_->triangle_area(t);
    s += w * fg[t].determinant();
    a += w;
  }
  return s / a;
}

double MacroModel::l2_norm(const Vector& u) const {
  double s = 0;
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const double a = mesh_->triangle_area(t);
    for (const auto& q : triangle_rule(2)) s += q.weight * a * value_at(*space_, u, t, q.bary).squaredNorm();
  }
  return std::sqrt(s);
}

} // namespace twoscale
