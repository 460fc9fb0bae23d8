#include "twoscale/analysis.hpp"
#include "twoscale/locator.hpp"
#include "twoscale/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twoscale {

double relative_error(const std::vector<double>& a, const std::vector<double>& A, const std::vector<double>& weights,
                      double eps) {
  if (a.size() != A.size() || a.size() != weights.size()) throw InvalidInput("relative_error: size mismatch");
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += weights[i] * (a[i] - A[i]) * (a[i] - A[i]);
    den += weights[i] * A[i] * A[i];
  }
  if (!(den > eps)) throw NumericalFailure("relative error undefined: reference field integrates to zero");
  return std::sqrt(num / den);
}

std::array<double, 2> displacement_error(const FESpace& micro, const Vector& u_micro, const FESpace& macro,
                                         const Vector& u_macro) {
  const Mesh2D& mm = micro.mesh();
  const PointLocator loc(macro.mesh());
  const auto& rule = triangle_rule(2);
  std::array<std::vector<double>, 2> a, A;
  std::vector<double> w;
  for (int t = 0; t < mm.num_triangles(); ++t) {
    const double area = mm.triangle_area(t);
    const auto& tri = mm.triangles[t];
    for (const auto& q : rule) {
      const Vec2 x = q.bary[0] * mm.nodes[tri[0]] + q.bary[1] * mm.nodes[tri[1]] + q.bary[2] * mm.nodes[tri[2]];
      const Location l = loc.locate(x);
      const Vec2 um = value_at(micro, u_micro, t, q.bary);
      const Vec2 uM = value_at(macro, u_macro, l.triangle, l.bary);
      for (int c = 0; c < 2; ++c) {
        a[c].push_back(um[c]);
        A[c].push_back(uM[c]);
      }
      w.push_back(q.weight * area);
    }
  }
  return {relative_error(a[0], A[0], w), relative_error(a[1], A[1], w)};
}

ErrorReport first_step_error(const ModelParams& p0) {
  ModelParams p = p0;
  p.t_max = 0;
  const MicroModel micro(p);
  const Vector um = micro.solve(std::vector<Mat2>(micro.num_regions(), Mat2::Identity()));
  const CoupledModel coupled(p);
  const CoupledResult cr = run_coupled(coupled);
  if (!cr.ok()) throw NumericalFailure(cr.error);
  const auto e = displacement_error(micro.space(), um, coupled.macro().space(), cr.u_first);
  return {p.Nx, p.w.mean() / p.l2.mean(), e[0], e[1]};
}

std::vector<ErrorReport> error_vs_Nx(const ModelParams& base, const std::vector<int>& nx,
                                     const std::vector<double>& w_over_l2, int threads) {
  std::vector<ModelParams> runs;
  for (int n : nx)
    for (double r : w_over_l2) {
      ModelParams p = base;
      p.Nx = n;
      p.w = LinearField(r * base.l2.lo, r * base.l2.hi);
      runs.push_back(p);
    }
  std::vector<ErrorReport> out(runs.size());
  parallel_for(static_cast<int>(runs.size()), threads, [&](int i) { out[i] = first_step_error(runs[i]); });
  return out;
}

Sensitivity sensitivity(const std::function<double(double)>& X, double x0, double rel_step, double additive_step,
                        double scale) {
  Sensitivity s;
  s.x0 = x0;
  const bool additive = x0 == 0;
  const double h = additive ? additive_step : rel_step * std::abs(x0);
  if (!(h > 0)) throw InvalidInput("sensitivity: zero finite-difference step");
  const double ref = additive ? scale : x0;
  s.value = X(x0);
  auto derivative = [&](double step) { return (X(x0 + step) - X(x0 - step)) / (2 * step); };
  s.derivative = derivative(h);
  const double half = derivative(0.5 * h);
  s.normalized = s.value != 0;
  const double norm = s.normalized ? ref / s.value : 1.0;
  s.phi = norm * s.derivative;
  const double phi_half = norm * half;
  s.nonlinear = std::abs(phi_half - s.phi) > 0.05 * std::max(std::abs(s.phi), 1e-6);
  return s;
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names{"P1", "E", "nu", "l2", "w", "eta", "tau"};
  return names;
}

namespace {

LinearField* field(ModelParams& p, const std::string& name) {
  if (name == "P1") return &p.pressure;
  if (name == "E") return &p.young;
  if (name == "nu") return &p.poisson;
  if (name == "l2") return &p.l2;
  if (name == "w") return &p.w;
  if (name == "eta") return &p.eta;
  if (name == "tau") return &p.tau;
  throw InvalidInput("unknown parameter '" + name + "' (expected P1, E, nu, l2, w, eta or tau)");
}

} // namespace

LinearField get_parameter(const ModelParams& p, const std::string& name) {
  return *field(const_cast<ModelParams&>(p), name);
}

void set_parameter(ModelParams& p, const std::string& name, const LinearField& v) { *field(p, name) = v; }

double growth_rate(const ModelParams& p0) {
  ModelParams p = p0;
  p.t_max = 0;
  const CoupledResult r = run_coupled(CoupledModel(p));
  if (!r.ok()) throw NumericalFailure(r.error);
  return r.trajectory.front().mean_growth_rate;
}

std::vector<SensitivityEntry> sensitivity_table(const ModelParams& ref, double rel_step, int threads) {
  std::vector<SensitivityEntry> out;
  for (GrowthLaw law : {GrowthLaw::Strain, GrowthLaw::Stress})
    for (const auto& name : parameter_names()) out.push_back({name, law, {}});
  parallel_for(static_cast<int>(out.size()), threads, [&](int i) {
    SensitivityEntry& e = out[i];
    ModelParams p = ref;
    p.law = e.law;
    const LinearField x0 = get_parameter(p, e.parameter);
    if (!x0.uniform()) throw InvalidInput("sensitivity needs a homogeneous reference for " + e.parameter);
    auto X = [&](double x) {
      ModelParams q = p;
      set_parameter(q, e.parameter, LinearField(x));
      return growth_rate(q);
    };
    double scale = 0;
    if (x0.lo == 0) {
      ModelParams q = p;
      set_parameter(q, e.parameter, LinearField(0.0));
      q.tau = LinearField(0.0);
      scale = growth_rate(q) / q.eta.lo;
    }
    e.s = sensitivity(X, x0.lo, rel_step, rel_step * scale, scale);
  });
  return out;
}

std::vector<ScanRow> scan(const ModelParams& base, const std::string& name, const std::vector<double>& values,
                          int threads) {
  std::vector<ScanRow> rows(values.size());
  parallel_for(static_cast<int>(values.size()), threads, [&](int i) {
    ModelParams p = base;
    set_parameter(p, name, LinearField(values[i]));
    rows[i].value = values[i];
    p.law = GrowthLaw::Strain;
    rows[i].strain = growth_rate(p);
    p.law = GrowthLaw::Stress;
    rows[i].stress = growth_rate(p);
  });
  return rows;
}

OutlineComparison compare_outlines(const MicroModel& micro, const Vector& u_micro, const Mesh2D& macro_mesh,
                                   const Vector& u_macro) {
  const Mesh2D& mm = micro.mesh();
  const auto chain = envelope_nodes(mm, micro.domain().width, micro.domain().height);
  const PointLocator loc(macro_mesh);
  std::vector<Vec2> pm, pM;
  for (int n : chain) {
    const Vec2& X = mm.nodes[n];
    pm.push_back(X + Vec2(u_micro[2 * n], u_micro[2 * n + 1]));
    const Location l = loc.locate(X);
    Vec2 d = Vec2::Zero();
    for (int k = 0; k < 3; ++k) {
      const int m = macro_mesh.triangles[l.triangle][k];
      d += l.bary[k] * Vec2(u_macro[2 * m], u_macro[2 * m + 1]);
    }
    pM.push_back(X + d);
  }
  OutlineComparison c;
  c.micro = polyline(pm);
  c.macro = polyline(pM);
  c.macro_box = deformed_outline(macro_mesh, u_macro);
  c.width = outline_width(c.micro);
  c.hausdorff = hausdorff_distance(c.micro, c.macro);
  c.hausdorff_box = hausdorff_distance(c.micro, c.macro_box);
  return c;
}

double outline_asymmetry(const Outline& o) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [p, q] : o.segments) {
    lo = std::min({lo, p.x(), q.x()});
    hi = std::max({hi, p.x(), q.x()});
  }
  Outline m;
  auto mirror = [&](const Vec2& p) { return Vec2(lo + hi - p.x(), p.y()); };
  for (const auto& [p, q] : o.segments) m.segments.push_back({mirror(p), mirror(q)});
  return hausdorff_distance(o, m) / (hi - lo);
}

GradientStudy gradient_study(const ModelParams& base, const std::string& name, double lo, double hi, GrowthLaw law,
                             int scan_points, bool with_micro, int threads) {
  GradientStudy g;
  g.parameter = name;
  g.law = law;
  g.range = LinearField(lo, hi);
  if (scan_points < 2) throw InvalidInput("gradient study needs at least two scan points");
  std::vector<double> values(scan_points);
  for (int i = 0; i < scan_points; ++i) values[i] = lo + (hi - lo) * i / (scan_points - 1.0);
  g.scan = scan(base, name, values, threads);

  ModelParams het = base;
  het.law = law;
  set_parameter(het, name, g.range);
  ModelParams hom = het;
  set_parameter(hom, name, LinearField(g.range.mean()));

  const CoupledModel cm(het, {true, threads});
  const CoupledResult cr = run_coupled(cm);
  if (!cr.ok()) {
    g.error = cr.error;
    return g;
  }
  g.coupled = deformed_outline(cm.fine(), cr.u);
  g.asymmetry = outline_asymmetry(g.coupled);
  const CoupledModel ch(hom, {true, threads});
  const CoupledResult hr = run_coupled(ch);
  if (!hr.ok()) {
    g.error = hr.error;
    return g;
  }
  g.homogeneous = deformed_outline(ch.fine(), hr.u);

  const bool micro_ok = name == "E" || name == "nu" || name == "P1" || name == "tau" || name == "eta";
  if (with_micro && micro_ok) {
    const MicroModel mm(het);
    const MicroResult mr = micro_time_loop(mm);
    if (!mr.ok()) {
      g.error = mr.error;
      return g;
    }
    g.has_micro = true;
    g.comparison = compare_outlines(mm, mr.u, cm.fine(), cr.u);
  }
  return g;
}

} // namespace twoscale
