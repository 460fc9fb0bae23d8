#include "twoscale/coupled.hpp"
#include "twoscale/growth.hpp"
#include "twoscale/parallel.hpp"

#include <cmath>
#include <sstream>

namespace twoscale {

namespace {

template <class T>
std::vector<T> node_average(const Mesh2D& mesh, const std::vector<T>& elem, T zero) {
  std::vector<T> acc(mesh.num_nodes(), zero);
  std::vector<double> w(mesh.num_nodes(), 0.0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double a = mesh.triangle_area(t);
    for (int n : mesh.triangles[t]) {
      acc[n] += a * elem[t];
      w[n] += a;
    }
  }
  for (int n = 0; n < mesh.num_nodes(); ++n) acc[n] /= w[n];
  return acc;
}

// Material/geometry/growth key of one coarse element
struct CellKey {
  int cell;
  double e, nu;
  Mat2 fg;
  bool same(const CellKey& o) const {
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
    if (cell != o.cell || !close(e, o.e) || !close(nu, o.nu)) return false;
    for (int i = 0; i < 4; ++i)
      if (!close(fg(i), o.fg(i))) return false;
    return true;
  }
};

} // namespace

std::vector<Mat2> element_to_node(const Mesh2D& mesh, const std::vector<Mat2>& elem) {
  return node_average<Mat2>(mesh, elem, Mat2::Zero());
}

std::vector<double> element_to_node(const Mesh2D& mesh, const std::vector<double>& elem) {
  return node_average<double>(mesh, elem, 0.0);
}

CoupledModel::CoupledModel(const ModelParams& params, CoupledOptions options)
    : params_(params), options_(options) {
  params_.validate();
  // the rectangle of the cellular tissue built from the mean geometry
  const TissueDomain tissue = build_tissue({params_.Nx, params_.cell_scale, params_.reference_geometry()});
  width_ = tissue.width;
  height_ = tissue.height;
  macro_ = std::make_unique<MacroModel>(params_, build_rect_mesh(width_, height_, params_.fine_edge), width_);
  coarse_ = std::make_unique<Mesh2D>(build_rect_mesh(width_, height_, params_.coarse_edge));

  std::vector<CellGeometry> geoms;
  for (int e = 0; e < coarse_->num_triangles(); ++e) {
    const CellGeometry g = params_.geometry_at(coarse_->centroid(e).x(), width_);
    int idx = -1;
    for (std::size_t k = 0; k < geoms.size(); ++k)
      if (geoms[k].l1 == g.l1 && geoms[k].l2 == g.l2 && geoms[k].theta_deg == g.theta_deg && geoms[k].w == g.w)
        idx = static_cast<int>(k);
    if (idx < 0) {
      idx = static_cast<int>(geoms.size());
      geoms.push_back(g);
    }
    coarse_cell_.push_back(idx);
  }
  cells_.resize(geoms.size());
  // unit cells are meshed in cell units, so edges_per_wall is per unit l2
  parallel_for(static_cast<int>(geoms.size()), options_.threads, [&](int k) {
    cells_[k] = std::make_unique<UnitCellSolver>(geoms[k], params_.edges_per_wall / geoms[k].l2);
  });

  const PointLocator coarse_loc(*coarse_);
  const Mesh2D& fine = macro_->mesh();
  fine_in_coarse_.resize(fine.num_nodes());
  for (int n = 0; n < fine.num_nodes(); ++n) {
    fine_in_coarse_[n] = coarse_loc.locate(fine.nodes[n]);
    if (fine_in_coarse_[n].distance > 1e-9 * coarse_->diameter())
      throw InvalidInput("fine mesh node outside the coarse mesh");
  }
  fine_elem_owner_.resize(fine.num_triangles());
  for (int t = 0; t < fine.num_triangles(); ++t) fine_elem_owner_[t] = coarse_loc.locate(fine.centroid(t)).triangle;
}

std::vector<HomogenizedProps> CoupledModel::coarse_properties(const std::vector<Mat2>& fg_coarse, long* solves) const {
  const int ne = coarse_->num_triangles();
  std::vector<CellKey> keys;
  std::vector<int> key_of(ne);
  for (int e = 0; e < ne; ++e) {
    const double x = coarse_->centroid(e).x();
    const CellKey k{coarse_cell_[e], params_.young.at(x, width_), params_.poisson.at(x, width_), fg_coarse[e]};
    int idx = -1;
    if (options_.memoize)
      for (std::size_t j = 0; j < keys.size() && idx < 0; ++j)
        if (keys[j].same(k)) idx = static_cast<int>(j);
    if (idx < 0) {
      idx = static_cast<int>(keys.size());
      keys.push_back(k);
    }
    key_of[e] = idx;
  }
  const double alpha = params_.pressure.slope(width_);
  std::vector<HomogenizedProps> unique(keys.size());
  parallel_for(static_cast<int>(keys.size()), options_.threads, [&](int j) {
    const CellKey& k = keys[j];
    unique[j] = cells_[k.cell]->compute(isotropic_plane_stress(k.e, k.nu), k.fg, alpha);
  });
  if (solves) *solves += static_cast<long>(keys.size());
  std::vector<HomogenizedProps> out(ne);
  for (int e = 0; e < ne; ++e) out[e] = unique[key_of[e]];
  return out;
}

std::vector<HomogenizedProps> CoupledModel::interpolate_coarse_to_fine(
    const std::vector<HomogenizedProps>& coarse_elem) const {
  // coarse element -> coarse node, area weighted
  const Mesh2D& c = *coarse_;
  std::vector<std::vector<const HomogenizedProps*>> src(c.num_nodes());
  std::vector<std::vector<double>> wt(c.num_nodes());
  for (int t = 0; t < c.num_triangles(); ++t)
    for (int n : c.triangles[t]) {
      src[n].push_back(&coarse_elem[t]);
      wt[n].push_back(c.triangle_area(t));
    }
  std::vector<HomogenizedProps> nodal(c.num_nodes());
  for (int n = 0; n < c.num_nodes(); ++n) {
    double s = 0;
    for (double w : wt[n]) s += w;
    for (double& w : wt[n]) w /= s;
    nodal[n] = blend(src[n], wt[n]);
  }
  std::vector<HomogenizedProps> fine(fine_in_coarse_.size());
  for (std::size_t n = 0; n < fine.size(); ++n) {
    const Location& l = fine_in_coarse_[n];
    const auto& tri = c.triangles[l.triangle];
    fine[n] = blend({&nodal[tri[0]], &nodal[tri[1]], &nodal[tri[2]]}, {l.bary[0], l.bary[1], l.bary[2]});
  }
  return fine;
}

std::vector<double> CoupledModel::interpolate_coarse_to_fine(const std::vector<double>& coarse_nodal) const {
  std::vector<double> fine(fine_in_coarse_.size());
  for (std::size_t n = 0; n < fine.size(); ++n) {
    const Location& l = fine_in_coarse_[n];
    const auto& tri = coarse_->triangles[l.triangle];
    fine[n] = l.bary[0] * coarse_nodal[tri[0]] + l.bary[1] * coarse_nodal[tri[1]] + l.bary[2] * coarse_nodal[tri[2]];
  }
  return fine;
}

std::vector<Mat2> CoupledModel::project_fine_to_coarse(const std::vector<Mat2>& fg_nodal) const {
  const Mesh2D& fine = macro_->mesh();
  std::vector<Mat2> acc(coarse_->num_triangles(), Mat2::Zero());
  std::vector<double> area(coarse_->num_triangles(), 0.0);
  for (int t = 0; t < fine.num_triangles(); ++t) {
    const auto& tri = fine.triangles[t];
    const Mat2 fe = (fg_nodal[tri[0]] + fg_nodal[tri[1]] + fg_nodal[tri[2]]) / 3.0;
    const double a = fine.triangle_area(t);
    acc[fine_elem_owner_[t]] += a * fe;
    area[fine_elem_owner_[t]] += a;
  }
  const PointLocator fine_loc(fine);
  for (int e = 0; e < coarse_->num_triangles(); ++e) {
    if (area[e] > 0) {
      acc[e] /= area[e];
    } else {
      // coarse element smaller than the fine ones: sample at its centroid
      const Location l = fine_loc.locate(coarse_->centroid(e));
      const auto& tri = fine.triangles[l.triangle];
      acc[e] = l.bary[0] * fg_nodal[tri[0]] + l.bary[1] * fg_nodal[tri[1]] + l.bary[2] * fg_nodal[tri[2]];
    }
    if (acc[e].determinant() < 1 - options_.proj_tol) {
      std::ostringstream os;
      os << "projected growth tensor on coarse element " << e << " has det " << acc[e].determinant() << " < 1";
      throw NumericalFailure(os.str());
    }
  }
  return acc;
}

MacroFields CoupledModel::fine_fields(const std::vector<HomogenizedProps>& nodal_props,
                                      const std::vector<Mat2>& fg_nodal) const {
  const Mesh2D& fine = macro_->mesh();
  MacroFields f;
  f.props.resize(fine.num_triangles());
  f.fg.resize(fine.num_triangles());
  const double third = 1.0 / 3.0;
  for (int t = 0; t < fine.num_triangles(); ++t) {
    const auto& tri = fine.triangles[t];
    f.props[t] = blend({&nodal_props[tri[0]], &nodal_props[tri[1]], &nodal_props[tri[2]]}, {third, third, third});
    f.fg[t] = (fg_nodal[tri[0]] + fg_nodal[tri[1]] + fg_nodal[tri[2]]) * third;
  }
  return f;
}

CoupledResult run_coupled(const CoupledModel& model, const CoupledObserver& observer) {
  const ModelParams& p = model.params();
  const MacroModel& macro = model.macro();
  CoupledResult res;
  std::vector<Mat2> fg(model.fine().num_nodes(), Mat2::Identity());
  const int steps = p.steps();
  for (int k = 0; k <= steps; ++k) {
    const double t = k * p.dt;
    try {
      const auto coarse = model.coarse_properties(model.project_fine_to_coarse(fg), &res.unit_cell_solves);
      const MacroFields fields = model.fine_fields(model.interpolate_coarse_to_fine(coarse), fg);
      Vector u = macro.solve(fields);
      const auto g = macro.growth_rates(macro.hom_stress_strain(u, fields), fields);
      res.trajectory.push_back({t, macro.mean_growth_rate(g), macro.mean_det(fields.fg), macro.l2_norm(u)});
      if (observer) observer({k, t, &u, &fields, &coarse, &fg});
      if (k == 0) res.u_first = u;
      res.u = std::move(u);
      res.fg_nodal = fg;
      if (k == steps) break;
      const auto g_nodal = element_to_node(model.fine(), g);
      for (std::size_t n = 0; n < fg.size(); ++n) {
        StepReport rep;
        const Mat2 next = euler_step(fg[n], g_nodal[n], p.dt, &rep);
        res.audit.record(fg[n], next, rep);
        fg[n] = next;
      }
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "coupled step " << k << " (t = " << t << ") failed: " << e.what();
      res.error = os.str();
      break;
    }
  }
  return res;
}

} // namespace twoscale
