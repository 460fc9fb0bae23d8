#pragma once

#include "twoscale/coupled.hpp"
#include "twoscale/micro.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace twoscale {

// sqrt(sum w (a - A)^2 / sum w A^2). Throws NumericalFailure when the
// denominator is below eps (the error is undefined for A = 0).
double relative_error(const std::vector<double>& a, const std::vector<double>& A, const std::vector<double>& weights,
                      double eps = 1e-300);

// Relative error of each displacement component of the cellular solution
// against the macro P1 field, both integrated over the cell walls. Macro
// values come from locating every micro quadrature point in the macro mesh.
std::array<double, 2> displacement_error(const FESpace& micro, const Vector& u_micro, const FESpace& macro,
                                         const Vector& u_macro);

struct ErrorReport {
  int Nx = 0;
  double w_over_l2 = 0;
  double e_u1 = 0, e_u2 = 0;
};

// First time step (Fg = I) of the cellular and coupled models.
ErrorReport first_step_error(const ModelParams& p);
std::vector<ErrorReport> error_vs_Nx(const ModelParams& base, const std::vector<int>& nx,
                                     const std::vector<double>& w_over_l2, int threads = 1);

struct Sensitivity {
  double x0 = 0, value = 0; // parameter and X(x0)
  double derivative = 0;    // central difference
  double phi = 0;           // normalized, or the raw derivative when X(x0) = 0
  bool normalized = true;
  bool nonlinear = false; // halving the step moved phi by more than 5%
};

// phi = (x0 / X(x0)) dX/dx by central differences with step rel_step * x0.
// For x0 = 0 the step is additive_step and x0 in the normalization is
// replaced by `scale`.
Sensitivity sensitivity(const std::function<double(double)>& X, double x0, double rel_step = 0.01,
                        double additive_step = 0, double scale = 0);

// Parameter access by name: P1, E, nu, l2, w, eta, tau.
const std::vector<std::string>& parameter_names();
LinearField get_parameter(const ModelParams& p, const std::string& name);
void set_parameter(ModelParams& p, const std::string& name, const LinearField& v);

// Mean tr(G)/2 of the first coupled step, the scalar behind scans and
// sensitivities.
double growth_rate(const ModelParams& p);

struct SensitivityEntry {
  std::string parameter;
  GrowthLaw law = GrowthLaw::Strain;
  Sensitivity s;
};

// One-factor-at-a-time table over parameter_names() for both laws. tau is
// perturbed additively by rel_step times the reference growth stimulus
// (growth rate / eta at tau = 0), which also normalizes it.
std::vector<SensitivityEntry> sensitivity_table(const ModelParams& ref, double rel_step = 0.01, int threads = 1);

struct ScanRow {
  double value = 0;
  double strain = 0, stress = 0; // growth rate under each law
};
std::vector<ScanRow> scan(const ModelParams& base, const std::string& name, const std::vector<double>& values,
                          int threads = 1);

struct OutlineComparison {
  Outline micro;     // envelope of the cellular tissue
  Outline macro;     // the same reference curve moved by the macro field
  Outline macro_box; // deformed boundary of the macro rectangle
  double width = 0;  // x extent of the deformed micro envelope
  double hausdorff = 0;
  double hausdorff_box = 0;
  double relative() const { return hausdorff / width; }
};

// Both models deform the reference envelope of the cellular tissue, so the
// cell-scale notches shared by the two outlines do not count as disagreement.
// hausdorff_box keeps the plain rectangle for reference.
OutlineComparison compare_outlines(const MicroModel& micro, const Vector& u_micro, const Mesh2D& macro_mesh,
                                   const Vector& u_macro);

// Hausdorff distance between an outline and its mirror image about the
// vertical mid line, over its width. Zero for a left-right symmetric shape.
double outline_asymmetry(const Outline& o);

struct GradientStudy {
  std::string parameter;
  GrowthLaw law = GrowthLaw::Strain;
  LinearField range;
  std::vector<ScanRow> scan;
  Outline coupled;      // boundary of the heterogeneous coupled run at t_max
  Outline homogeneous;  // coupled run at the range mean
  bool has_micro = false;
  OutlineComparison comparison; // coupled vs micro, heterogeneous
  double asymmetry = 0;         // of the coupled heterogeneous outline
  std::string error;
};

// Homogeneous scan over [lo, hi], then heterogeneous runs with the parameter
// affine in x1 from lo to hi. The cellular model runs too for E, nu, P1, tau
// and eta when with_micro is set.
GradientStudy gradient_study(const ModelParams& base, const std::string& name, double lo, double hi, GrowthLaw law,
                             int scan_points, bool with_micro, int threads = 1);

} // namespace twoscale
