// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion; exit code
// is nonzero if any selected criterion fails. `--only N` runs one criterion.

#include "../support/oracles.hpp"
#include "twoscale/analysis.hpp"
#include "twoscale/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace twoscale;

namespace {

// Pinned tolerances
constexpr double kIsoTol = 1e-3;           // criterion 1, relative
constexpr double kIsoOffDiag = 1e-6;       // criterion 1, K12 / K11
constexpr double kSolidTol = 0.01;         // criterion 2
constexpr double kGrowthInvariance = 1e-6; // criterion 3
constexpr double kLawMatch = 1e-6;         // criterion 6
constexpr double kStressFlat = 1e-4;       // criterion 7
constexpr double kStrainMin = 0.1;         // criterion 7
constexpr double kEtaTol = 1e-8;           // criterion 8
constexpr double kOutlineTol = 0.02;       // criterion 10
constexpr double kRateTol = 0.10;          // criterion 10
constexpr double kCstTol = 1e-12;          // criterion 11
constexpr double kP1Order = 1.9;           // criterion 11
constexpr double kP2Order = 2.9;           // criterion 11
constexpr double kGradientTol = 0.03;      // criterion 12

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

using Check = std::function<void(Outcome&)>;

const ElasticTensor2D kWall = isotropic_plane_stress(1, 0.3);

Mat2 diag(double a, double b) {
  Mat2 m;
  m << a, 0, 0, b;
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void criterion1(Outcome& o) {
  const UnitCellSolver uc({1, 1, 30, 0.05}, 25);
  const HomogenizedProps p = uc.compute(kWall, Mat2::Identity());
  const OrthotropicProps op = orthotropic_props(p.e_hom);
  const double de = std::abs(op.e1 - op.e2) / op.e1;
  const double dk = std::abs(p.k_hom(0, 0) - p.k_hom(1, 1)) / std::abs(p.k_hom(0, 0));
  const double off = std::max(std::abs(p.k_hom(0, 1)), std::abs(p.k_hom(1, 0))) / std::abs(p.k_hom(0, 0));
  o.detail << "E1=" << op.e1 << " E2=" << op.e2 << " |dE|/E1=" << de << " K11=" << p.k_hom(0, 0)
           << " K22=" << p.k_hom(1, 1) << " |dK|/|K11|=" << dk << " |K12|/|K11|=" << off;
  o.require(de <= kIsoTol, "E1 == E2");
  o.require(dk <= kIsoTol, "K11 == K22");
  o.require(off <= kIsoOffDiag, "K off-diagonal");
}

void criterion2(Outcome& o) {
  const UnitCellSolver uc({1, 1, 30, 0.999}, 25);
  const HomogenizedProps p = uc.compute(kWall, Mat2::Identity());
  double worst = 0;
  const double scale = kWall.e1111();
  for (int i = 0; i < 6; ++i) {
    const double ref = kWall.c[i];
    const double err = ref != 0 ? rel(p.e_hom.c[i], ref) : std::abs(p.e_hom.c[i]) / scale;
    worst = std::max(worst, err);
  }
  const double k = p.k_hom.norm();
  o.detail << "wall_fraction=" << p.wall_fraction << " max component error=" << worst << " |K|=" << k;
  o.require(worst <= kSolidTol, "E_hom within 1% of the wall tensor");
  o.require(k <= kSolidTol * 1.0, "|K| <= 1% E");
}

void criterion3(Outcome& o) {
  const UnitCellSolver uc({1, 1, 30, 0.05}, 25);
  const HomogenizedProps a = uc.compute(kWall, Mat2::Identity());
  const HomogenizedProps b = uc.compute(kWall, 1.5 * Mat2::Identity());
  double de = 0;
  for (int i = 0; i < 6; ++i) de = std::max(de, std::abs(a.e_hom.c[i] - b.e_hom.c[i]) / a.e_hom.e1111());
  const double dk = (a.k_hom - b.k_hom).cwiseAbs().maxCoeff() / a.k_hom.cwiseAbs().maxCoeff();
  o.detail << "max rel change E_hom=" << de << " K_hom=" << dk;
  o.require(de <= kGrowthInvariance, "E_hom invariant");
  o.require(dk <= kGrowthInvariance, "K_hom invariant");
}

void criterion4(Outcome& o) {
  const UnitCellSolver uc({1, 1, 30, 0.05}, 25);
  std::vector<PropertyRow> rows;
  for (double g : {1.0, 1.5, 2.0, 3.0}) rows.push_back(property_row(g, uc.compute(kWall, diag(g, 1)), 1.0));
  for (const auto& r : rows)
    o.detail << " g=" << r.x << ":E1=" << r.e1 << ",E2=" << r.e2 << ",K11=" << r.k11 << ",K22=" << r.k22
             << ",nu12=" << r.nu12;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto &p = rows[i - 1], &c = rows[i];
    o.require(c.e1 > p.e1, "E1 increasing");
    o.require(c.e2 < p.e2, "E2 decreasing");
    o.require(std::abs(c.k11) < std::abs(p.k11), "|K11| decreasing");
    o.require(std::abs(c.k22) > std::abs(p.k22), "|K22| increasing");
    o.require(c.nu12 > p.nu12, "nu12 increasing");
  }
}

void criterion5(Outcome& o) {
  const std::vector<double> ws{0.05, 0.1, 0.2};
  const auto rows = error_vs_Nx(ModelParams{}, {8, 16}, ws);
  std::map<std::pair<int, double>, ErrorReport> by;
  for (const auto& r : rows) {
    by[{r.Nx, r.w_over_l2}] = r;
    o.detail << " Nx=" << r.Nx << ",w/l2=" << r.w_over_l2 << ":e_u1=" << r.e_u1 << ",e_u2=" << r.e_u2;
  }
  for (double w : ws) {
    o.require(by[{16, w}].e_u1 < by[{8, w}].e_u1, "e(u1) decreases with Nx");
    o.require(by[{16, w}].e_u2 < by[{8, w}].e_u2, "e(u2) decreases with Nx");
  }
  for (int n : {8, 16}) {
    o.require(by[{n, 0.05}].e_u1 > by[{n, 0.2}].e_u1, "e(u1) larger for thin walls");
    o.require(by[{n, 0.05}].e_u2 > by[{n, 0.2}].e_u2, "e(u2) larger for thin walls");
  }
}

void criterion6(Outcome& o) {
  ModelParams p;
  p.poisson = LinearField(0.0);
  p.law = GrowthLaw::Stress;
  const double s = growth_rate(p);
  p.law = GrowthLaw::Strain;
  const double e = growth_rate(p);
  o.detail << "stress=" << s << " strain=" << e << " rel=" << rel(s, e);
  o.require(rel(s, e) <= kLawMatch, "laws agree at nu = 0");
}

std::map<std::pair<std::string, GrowthLaw>, Sensitivity> table() {
  std::map<std::pair<std::string, GrowthLaw>, Sensitivity> t;
  for (const auto& e : sensitivity_table(ModelParams{}, 0.01, default_threads())) t[{e.parameter, e.law}] = e.s;
  return t;
}

void criterion7(Outcome& o) {
  auto t = table();
  for (const auto& n : {"E", "nu"})
    for (GrowthLaw law : {GrowthLaw::Stress, GrowthLaw::Strain})
      o.detail << " phi(" << n << "," << to_string(law) << ")=" << t[{n, law}].phi;
  o.require(std::abs(t[{"E", GrowthLaw::Stress}].phi) <= kStressFlat, "stress law flat in E");
  o.require(std::abs(t[{"nu", GrowthLaw::Stress}].phi) <= kStressFlat, "stress law flat in nu");
  for (const auto& n : {"E", "nu"}) {
    const double phi = t[{n, GrowthLaw::Strain}].phi;
    o.require(phi < 0 && std::abs(phi) > kStrainMin, std::string("strain law decreasing in ") + n);
  }
}

void criterion8(Outcome& o) {
  auto t = table();
  for (GrowthLaw law : {GrowthLaw::Strain, GrowthLaw::Stress}) {
    auto phi = [&](const std::string& n) { return t[{n, law}].phi; };
    for (const auto& n : {"P1", "eta", "tau", "w", "l2"}) o.detail << " phi(" << n << "," << to_string(law) << ")=" << phi(n);
    o.require(phi("P1") > 0, "phi(P1) > 0");
    o.require(std::abs(phi("eta") - 1) <= kEtaTol, "phi(eta) == 1");
    o.require(phi("tau") < 0, "phi(tau) < 0");
    o.require(phi("w") < 0, "phi(w) < 0");
    o.require(phi("l2") > 0, "phi(l2) > 0");
  }
}

void audit_line(Outcome& o, const std::string& name, const GrowthAudit& a, const std::string& error) {
  o.detail << " " << name << ":det_decreased=" << a.det_decreased << ",det_below_one=" << a.det_below_one
           << ",min_det=" << a.min_det;
  o.require(error.empty(), name + " completed (" + error + ")");
  o.require(a.contract_ok(), name + " det Fg nondecreasing and >= 1");
}

void criterion9(Outcome& o) {
  ModelParams p;
  const MicroResult micro = micro_time_loop(MicroModel(p));
  audit_line(o, "micro/strain", micro.audit, micro.error);
  for (GrowthLaw law : {GrowthLaw::Strain, GrowthLaw::Stress}) {
    ModelParams q = p;
    q.law = law;
    const CoupledResult c = run_coupled(CoupledModel(q, {true, default_threads()}));
    audit_line(o, std::string("coupled/") + to_string(law), c.audit, c.error);
  }
  // threshold at 10x the larger of the two growth stimuli
  ModelParams s = p;
  s.law = GrowthLaw::Stress;
  const double scale = std::max(growth_rate(p), growth_rate(s)) / p.eta.lo;
  ModelParams q = p;
  q.tau = LinearField(10 * scale);
  const MicroResult mq = micro_time_loop(MicroModel(q));
  const CoupledResult cq = run_coupled(CoupledModel(q, {true, default_threads()}));
  double dev = 0;
  for (const auto& f : mq.fg) dev = std::max(dev, (f - Mat2::Identity()).cwiseAbs().maxCoeff());
  for (const auto& f : cq.fg_nodal) dev = std::max(dev, (f - Mat2::Identity()).cwiseAbs().maxCoeff());
  o.detail << " tau=" << q.tau.lo << ":max|Fg-I|=" << dev << ",steps=" << mq.trajectory.size() << "/"
           << cq.trajectory.size();
  o.require(mq.ok() && cq.ok(), "high-threshold runs completed");
  o.require(mq.trajectory.size() == 61 && cq.trajectory.size() == 61, "60 steps");
  o.require(dev == 0, "Fg == I at high threshold");
  o.require(mq.audit.contract_ok() && cq.audit.contract_ok(), "contract at high threshold");
}

struct Pair {
  MicroResult micro;
  CoupledResult coupled;
  OutlineComparison outline;
};

Pair run_pair(const ModelParams& p) {
  const MicroModel mm(p);
  const CoupledModel cm(p, {true, default_threads()});
  Pair r{micro_time_loop(mm), run_coupled(cm), {}};
  if (r.micro.ok() && r.coupled.ok()) r.outline = compare_outlines(mm, r.micro.u, cm.fine(), r.coupled.u);
  return r;
}

void criterion10(Outcome& o) {
  for (double w : {0.05, 0.1}) {
    ModelParams p;
    p.w = LinearField(w);
    const Pair r = run_pair(p);
    o.require(r.micro.ok(), "micro run (" + r.micro.error + ")");
    o.require(r.coupled.ok(), "coupled run (" + r.coupled.error + ")");
    if (!r.micro.ok() || !r.coupled.ok()) return;
    o.detail << " w/l2=" << w << ":hausdorff/width=" << r.outline.relative()
             << ",rectangle hausdorff/width=" << r.outline.hausdorff_box / r.outline.width;
    o.require(r.outline.relative() <= kOutlineTol, "outline within 2% at w/l2=" + std::to_string(w));
    if (w == 0.1) {
      double worst = 0;
      for (std::size_t k = 5; k < r.coupled.trajectory.size(); ++k)
        worst = std::max(worst, rel(r.micro.trajectory[k].mean_growth_rate, r.coupled.trajectory[k].mean_growth_rate));
      o.detail << ",max rate rel diff (t>=5)=" << worst;
      o.require(worst <= kRateTol, "growth rate within 10%");
    }
  }
}

void criterion11(Outcome& o) {
  const std::array<Vec2, 3> x{Vec2(0.1, 0.2), Vec2(1.3, 0.4), Vec2(0.5, 1.7)};
  const double cst = oracle::cst_mismatch(x, isotropic_plane_stress(1, 0));
  o.detail << "CST mismatch=" << cst;
  o.require(cst <= kCstTol, "CST stiffness");
  const auto e = isotropic_plane_stress(1, 0.3);
  for (int order : {1, 2}) {
    const auto c = oracle::manufactured_convergence(order, {8, 16, 32, 64}, e);
    o.detail << " P" << order << " orders:";
    for (double r : c.order) o.detail << " " << r;
    for (double r : c.order) o.require(r >= (order == 1 ? kP1Order : kP2Order), "P" + std::to_string(order) + " order");
  }
}

void criterion12(Outcome& o) {
  for (GrowthLaw law : {GrowthLaw::Strain, GrowthLaw::Stress}) {
    ModelParams ref;
    ref.law = law;
    const double scale = growth_rate(ref) / ref.eta.lo;
    const std::vector<std::tuple<std::string, double, double>> ranges{
        {"E", 0.5, 1.5}, {"nu", 0.0, 0.45}, {"P1", 0.0005, 0.0015}, {"tau", 0.0, 0.5 * scale}, {"eta", 0.5, 1.5}};
    for (const auto& [name, lo, hi] : ranges) {
      const GradientStudy g = gradient_study(ref, name, lo, hi, law, 2, true, default_threads());
      o.require(g.error.empty(), name + " run (" + g.error + ")");
      if (!g.error.empty()) continue;
      o.detail << " " << name << "/" << to_string(law) << ":" << g.comparison.relative() << "(asym " << g.asymmetry << ")";
      o.require(g.comparison.relative() <= kGradientTol, name + "/" + to_string(law) + " outline within 3%");
    }
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, Check>> checks{
      {"regular-hexagon isotropy", criterion1},
      {"solid limit", criterion2},
      {"isotropic-growth invariance", criterion3},
      {"anisotropic-growth trends", criterion4},
      {"micro-vs-macro error decay", criterion5},
      {"growth-law coincidence at nu = 0", criterion6},
      {"stress-law material insensitivity", criterion7},
      {"sensitivity sign pattern", criterion8},
      {"growth-tensor contract", criterion9},
      {"homogeneous trajectory agreement", criterion10},
      {"FEM kernel correctness", criterion11},
      {"heterogeneous validation", criterion12},
  };
  bool all = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (only && n != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      checks[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s) [%.1fs]: %s\n", o.pass ? "PASS" : "FAIL", n, checks[i].first.c_str(), secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
