#include "twoscale/analysis.hpp"
#include "twoscale/config.hpp"
#include "twoscale/io.hpp"
#include "twoscale/parallel.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

using namespace twoscale;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
  int threads = 1;
  std::string law;
};

SimulationConfig load(const Common& c) {
  SimulationConfig cfg = c.config_path.empty() ? parse_config_text("") : parse_config(c.config_path);
  if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
  if (c.law == "stress") cfg.model.law = GrowthLaw::Stress;
  else if (c.law == "strain") cfg.model.law = GrowthLaw::Strain;
  ensure_directory(cfg.out_dir);
  return cfg;
}

std::string path(const SimulationConfig& cfg, const std::string& file) { return cfg.out_dir + "/" + file; }

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !(is >> std::ws).eof()) throw InvalidInput("bad list entry '" + item + "' in '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

// name=start:stop:count
std::pair<std::string, std::vector<double>> parse_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InvalidInput("expected name=start:stop:count, got '" + text + "'");
  std::istringstream is(text.substr(eq + 1));
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
    throw InvalidInput("expected name=start:stop:count, got '" + text + "'");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1.0);
  return {text.substr(0, eq), v};
}

bool snapshot_due(const SimulationConfig& cfg, double t) {
  for (double s : cfg.snapshots)
    if (std::abs(s - t) <= 1e-9 * cfg.model.dt) return true;
  return false;
}

std::string stamp(double t) {
  std::ostringstream os;
  os << "t" << format_number(t);
  return os.str();
}

int cmd_unitcell(const Common& c, const std::string& sweep_text) {
  const SimulationConfig cfg = load(c);
  const ModelParams& m = cfg.model;
  const SweepSpec sweep = parse_sweep(sweep_text);
  const CellGeometry g = m.reference_geometry();
  const auto rows = property_curves(sweep, g, m.young.mean(), m.poisson.mean(), m.edges_per_wall / g.l2, c.threads);
  CsvTable t({sweep.kind == SweepKind::Growth ? "g" : "w_over_l2", "E1", "E2", "nu12", "G12", "K11", "K22", "K12",
              "wall_fraction"});
  for (const auto& r : rows) t.row(std::vector<double>{r.x, r.e1, r.e2, r.nu12, r.g12, r.k11, r.k22, r.k12, r.wall_fraction});
  t.write(path(cfg, "unitcell.csv"), config_hash(cfg));
  return 0;
}

int cmd_micro(const Common& c) {
  const SimulationConfig cfg = load(c);
  const MicroModel model(cfg.model);
  const Mesh2D& mesh = model.mesh();
  const MicroResult r = micro_time_loop(model, [&](int, double t, const Vector& u, const std::vector<Mat2>& fg) {
    if (!snapshot_due(cfg, t)) return;
    std::vector<Mat2> fe(mesh.num_triangles());
    for (int e = 0; e < mesh.num_triangles(); ++e) fe[e] = fg[mesh.region[e]];
    write_vtk(path(cfg, "micro_" + stamp(t) + ".vtk"), mesh, {displacement_field(mesh, u)}, tensor_fields("Fg", fe));
  });
  const std::string hash = config_hash(cfg);
  trajectory_table(r.trajectory).write(path(cfg, "micro_trajectory.csv"), hash);
  if (r.u.size()) {
    outline_table(envelope_outline(mesh, r.u, model.domain().width, model.domain().height))
        .write(path(cfg, "micro_outline.csv"), hash);
  }
  if (!r.ok()) {
    std::cerr << r.error << "\n";
    return 1;
  }
  return 0;
}

int cmd_macro(const Common& c) {
  SimulationConfig cfg = load(c);
  cfg.model.t_max = 0;
  const CoupledModel model(cfg.model, {true, c.threads});
  const CoupledResult r = run_coupled(model, [&](const CoupledStep& s) {
    const Mesh2D& mesh = model.fine();
    const auto g = model.macro().growth_rates(model.macro().hom_stress_strain(*s.u, *s.fields), *s.fields);
    write_vtk(path(cfg, "macro.vtk"), mesh, {displacement_field(mesh, *s.u)}, tensor_fields("G", g));
  });
  if (!r.ok()) {
    std::cerr << r.error << "\n";
    return 1;
  }
  trajectory_table(r.trajectory).write(path(cfg, "macro.csv"), config_hash(cfg));
  return 0;
}

int cmd_coupled(const Common& c) {
  const SimulationConfig cfg = load(c);
  const CoupledModel model(cfg.model, {true, c.threads});
  const Mesh2D& mesh = model.fine();
  const CoupledResult r = run_coupled(model, [&](const CoupledStep& s) {
    if (!snapshot_due(cfg, s.t)) return;
    write_vtk(path(cfg, "coupled_" + stamp(s.t) + ".vtk"), mesh, {displacement_field(mesh, *s.u)},
              tensor_fields("Fg", s.fields->fg));
  });
  const std::string hash = config_hash(cfg);
  trajectory_table(r.trajectory).write(path(cfg, "coupled_trajectory.csv"), hash);
  if (r.u.size()) outline_table(deformed_outline(mesh, r.u)).write(path(cfg, "coupled_outline.csv"), hash);
  std::cout << "unit cell solves: " << r.unit_cell_solves << "\n";
  if (!r.ok()) {
    std::cerr << r.error << "\n";
    return 1;
  }
  return 0;
}

int cmd_compare(const Common& c, const std::string& nx, const std::string& ws) {
  const SimulationConfig cfg = load(c);
  const auto rows = error_vs_Nx(cfg.model, parse_list<int>(nx), parse_list<double>(ws), c.threads);
  CsvTable t({"Nx", "w_over_l2", "e_u1", "e_u2"});
  for (const auto& r : rows) t.row(std::vector<double>{static_cast<double>(r.Nx), r.w_over_l2, r.e_u1, r.e_u2});
  t.write(path(cfg, "error_vs_Nx.csv"), config_hash(cfg));
  return 0;
}

int cmd_sensitivity(const Common& c, double rel_step) {
  const SimulationConfig cfg = load(c);
  CsvTable t({"param", "law", "x0", "growth_rate", "phi", "normalized", "nonlinear"});
  for (const auto& e : sensitivity_table(cfg.model, rel_step, c.threads))
    t.row({e.parameter, to_string(e.law), format_number(e.s.x0), format_number(e.s.value), format_number(e.s.phi),
           e.s.normalized ? "1" : "0", e.s.nonlinear ? "1" : "0"});
  t.write(path(cfg, "sensitivity.csv"), config_hash(cfg));
  return 0;
}

int cmd_scan(const Common& c, const std::string& range, bool gradient, bool micro) {
  const SimulationConfig cfg = load(c);
  const auto [name, values] = parse_range(range);
  const std::string hash = config_hash(cfg);
  if (!gradient) {
    CsvTable t({"value", "growth_rate_strain", "growth_rate_stress"});
    for (const auto& r : scan(cfg.model, name, values, c.threads)) t.row(std::vector<double>{r.value, r.strain, r.stress});
    t.write(path(cfg, "scan_" + name + ".csv"), hash);
    return 0;
  }
  const GradientStudy g = gradient_study(cfg.model, name, values.front(), values.back(), cfg.model.law,
                                         static_cast<int>(values.size()), micro, c.threads);
  CsvTable t({"value", "growth_rate_strain", "growth_rate_stress"});
  for (const auto& r : g.scan) t.row(std::vector<double>{r.value, r.strain, r.stress});
  t.write(path(cfg, "scan_" + name + ".csv"), hash);
  if (!g.error.empty()) {
    std::cerr << g.error << "\n";
    return 1;
  }
  const std::string tag = name + "_" + to_string(g.law);
  outline_table(g.coupled).write(path(cfg, "gradient_" + tag + "_coupled.csv"), hash);
  outline_table(g.homogeneous).write(path(cfg, "gradient_" + tag + "_homogeneous.csv"), hash);
  std::cout << "asymmetry " << g.asymmetry << "\n";
  if (g.has_micro) {
    outline_table(g.comparison.micro).write(path(cfg, "gradient_" + tag + "_micro.csv"), hash);
    std::cout << "hausdorff/width " << g.comparison.relative() << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-scale growth of cellular plant tissue"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "YAML configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", common.out_dir, "output directory (overrides output.dir)");
  app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--law", common.law, "growth law (overrides growth.law)")->check(CLI::IsMember({"stress", "strain"}));

  std::string sweep = "w_over_l2=0.02:1.0:25";
  auto* unitcell = app.add_subcommand("unitcell", "effective property curves");
  unitcell->add_option("--sweep", sweep, "w_over_l2=a:b:n or g=a:b:n");

  auto* micro = app.add_subcommand("micro", "cellular tissue run");
  auto* macro = app.add_subcommand("macro", "single homogenized solve at Fg = I");
  auto* coupled = app.add_subcommand("coupled", "two-scale growth run");

  std::string nx = "8,16", ws = "0.05,0.1,0.2";
  auto* compare = app.add_subcommand("compare", "first-step cellular vs homogenized error");
  compare->add_option("--Nx", nx, "comma separated cell counts");
  compare->add_option("--w_over_l2", ws, "comma separated wall thickness ratios");

  double rel_step = 0.01;
  auto* sens = app.add_subcommand("sensitivity", "one-factor-at-a-time growth-rate sensitivities");
  sens->add_option("--rel-step", rel_step, "relative finite-difference step");

  std::string range;
  bool gradient = false, with_micro = false;
  auto* scan_cmd = app.add_subcommand("scan", "growth rate over a parameter range");
  scan_cmd->add_option("--range", range, "param=start:stop:count, param in P1,E,nu,l2,w,eta,tau")->required();
  scan_cmd->add_flag("--gradient", gradient, "also run the parameter affine in x1 over the range");
  scan_cmd->add_flag("--micro", with_micro, "with --gradient: run the cellular model too (E, nu, P1, tau, eta)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*unitcell) return cmd_unitcell(common, sweep);
    if (*micro) return cmd_micro(common);
    if (*macro) return cmd_macro(common);
    if (*coupled) return cmd_coupled(common);
    if (*compare) return cmd_compare(common, nx, ws);
    if (*sens) return cmd_sensitivity(common, rel_step);
    if (*scan_cmd) return cmd_scan(common, range, gradient, with_micro);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
