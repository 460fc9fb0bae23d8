#include "twoscale/micro.hpp"

#include <cmath>
#include <sstream>

namespace twoscale {

MicroModel::MicroModel(const ModelParams& params) : params_(params) {
  params_.validate();
  domain_ = build_tissue(params_.layout());
  // edges_per_wall counts triangle edges per wall length l2 in physical units
  const double epu = params_.edges_per_wall / (params_.l2.lo * domain_.layout.scale());
  mesh_ = std::make_unique<Mesh2D>(triangulate(domain_, epu));
  space_ = std::make_unique<FESpace>(*mesh_, 1);

  const int nt = mesh_->num_triangles();
  const int nr = mesh_->num_regions();
  region_area_.assign(nr, 0.0);
  tensor_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const double a = mesh_->triangle_area(t);
    const Vec2 c = mesh_->centroid(t);
    region_area_[mesh_->region[t]] += a;
    tensor_[t] = isotropic_plane_stress(params_.young.at(c.x(), domain_.width), params_.poisson.at(c.x(), domain_.width));
  }
  if (nr != domain_.num_cells()) throw InvalidInput("tissue mesh regions do not match the cells");
  for (int r = 0; r < nr; ++r) {
    if (!(region_area_[r] > 0)) throw InvalidInput("empty tissue cell " + std::to_string(r));
    anchor_.push_back(domain_.cells[r].centre);
  }

  std::vector<char> seen(mesh_->num_nodes(), 0);
  for (const auto& e : mesh_->boundary_edges)
    if (e.tag == BoundaryTag::OuterBottom)
      for (int n : {e.a, e.b})
        if (!seen[n]) {
          seen[n] = 1;
          bottom_nodes_.push_back(n);
        }
}

ElementCoefficients MicroModel::coefficients(const std::vector<Mat2>& fg) const {
  if (static_cast<int>(fg.size()) != num_regions()) throw InvalidInput("one growth tensor per region expected");
  ElementCoefficients c;
  c.tensor = tensor_;
  c.fg.resize(mesh_->num_triangles());
  for (int t = 0; t < mesh_->num_triangles(); ++t) c.fg[t] = fg[mesh_->region[t]];
  return c;
}

Vector MicroModel::solve(const std::vector<Mat2>& fg, SolveReport* report) const {
  const FESpace& sp = *space_;
  const ElementCoefficients coef = coefficients(fg);
  const SparseMatrix k = assemble_stiffness(sp, coef);

  const double width = domain_.width;
  const Vec2 grad_p(params_.pressure.slope(width), 0.0);
  std::vector<InverseDet> inv(num_regions());
  for (int r = 0; r < num_regions(); ++r) inv[r] = inverse_and_det(fg[r]);
  auto of_elem = [&](int t) -> const InverseDet& { return inv[mesh_->region[t]]; };

  Vector f = Vector::Zero(sp.num_dofs());
  // E [I - sym(Fg^-1)] - P1 I against grad phi Fg^-1 (J applied by the helper)
  add_stress_load(f, sp, coef.fg, [&](int t, const Vec2& x) {
    const Mat2 pre = Mat2::Identity() - sym(of_elem(t).inverse);
    return Mat2(contract(tensor_[t], pre) - pressure_at(x) * Mat2::Identity());
  });
  if (grad_p.squaredNorm() > 0)
    add_body_force(f, sp, [&](int t, const Vec2&) {
      const InverseDet& d = of_elem(t);
      return Vec2(-d.det * (d.inverse.transpose() * grad_p));
    });

  add_edge_load(
      f, sp, [](const BoundaryEdge& e) { return e.tag == BoundaryTag::CellInterface; },
      [&](const BoundaryEdge& e, const Vec2& x) {
        const InverseDet& d = of_elem(e.triangle);
        const double dp = cell_pressure(mesh_->region[e.triangle]) - pressure_at(x);
        return Vec2(-d.det * dp * (d.inverse.transpose() * mesh_->outward_normal(e)));
      });
  const Vec2 traction = params_.traction;
  add_edge_load(
      f, sp, [](const BoundaryEdge& e) { return e.tag != BoundaryTag::CellInterface; },
      [&](const BoundaryEdge& e, const Vec2& x) {
        const InverseDet& d = of_elem(e.triangle);
        const Vec2 fn = d.inverse.transpose() * mesh_->outward_normal(e);
        Vec2 t = d.det * pressure_at(x) * fn;
        if (e.tag == BoundaryTag::OuterOther) t += d.det * fn.norm() * traction;
        return t;
      });

  Constraints cons;
  for (int n : bottom_nodes_) cons.fixed.push_back({2 * n + 1, 0.0});
  cons.integrals.push_back({mean_functional(sp, 0), 0.0});
  cons.nullspace.push_back(translation_mode(sp, 0));
  return solve_constrained(k, f, cons, 1e-10, report);
}

std::vector<CellAverage> MicroModel::cell_averages(const Vector& u, const std::vector<Mat2>& fg) const {
  const auto ss = evaluate_strain_stress(*space_, u, coefficients(fg));
  std::vector<CellAverage> avg(num_regions());
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const double a = mesh_->triangle_area(t);
    auto& c = avg[mesh_->region[t]];
    c.stress += a * ss[t].stress;
    c.strain += a * ss[t].strain;
  }
  for (int r = 0; r < num_regions(); ++r) {
    avg[r].stress /= region_area_[r];
    avg[r].strain /= region_area_[r];
  }
  return avg;
}

std::vector<Mat2> MicroModel::growth_rates(const std::vector<CellAverage>& avg) const {
  std::vector<Mat2> g(avg.size());
  for (std::size_t r = 0; r < avg.size(); ++r) {
    const GrowthParams gp = params_.growth_at(anchor_[r].x(), domain_.width);
    g[r] = growth_rate(gp.law == GrowthLaw::Stress ? avg[r].stress : avg[r].strain, gp);
  }
  return g;
}

double MicroModel::mean_growth_rate(const std::vector<Mat2>& g) const {
  double s = 0, a = 0;
  for (int r = 0; r < num_regions(); ++r) {
    s += region_area_[r] * 0.5 * g[r].trace();
    a += region_area_[r];
  }
  return s / a;
}

double MicroModel::mean_det(const std::vector<Mat2>& fg) const {
  double s = 0, a = 0;
  for (int r = 0; r < num_regions(); ++r) {
    s += region_area_[r] * fg[r].determinant();
    a += region_area_[r];
  }
  return s / a;
}

double MicroModel::l2_norm(const Vector& u) const {
  double s = 0;
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const double a = mesh_->triangle_area(t);
    for (const auto& q : triangle_rule(2)) s += q.weight * a * value_at(*space_, u, t, q.bary).squaredNorm();
  }
  return std::sqrt(s);
}

MicroResult micro_time_loop(const MicroModel& model, const MicroObserver& observer) {
  const ModelParams& p = model.params();
  MicroResult res;
  std::vector<Mat2> fg(model.num_regions(), Mat2::Identity());
  const int steps = p.steps();
  for (int k = 0; k <= steps; ++k) {
    const double t = k * p.dt;
    try {
      Vector u = model.solve(fg);
      const auto g = model.growth_rates(model.cell_averages(u, fg));
      res.trajectory.push_back({t, model.mean_growth_rate(g), model.mean_det(fg), model.l2_norm(u)});
      if (observer) observer(k, t, u, fg);
      if (k == 0) res.u_first = u;
      res.u = std::move(u);
      res.fg = fg;
      if (k == steps) break;
      for (int r = 0; r < model.num_regions(); ++r) {
        StepReport rep;
        const Mat2 next = euler_step(fg[r], g[r], p.dt, &rep);
        res.audit.record(fg[r], next, rep);
        fg[r] = next;
      }
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "micro step " << k << " (t = " << t << ") failed: " << e.what();
      res.error = os.str();
      break;
    }
  }
  return res;
}

} // namespace twoscale
