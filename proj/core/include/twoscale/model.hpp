#pragma once

#include "twoscale/geometry.hpp"
#include "twoscale/growth.hpp"
#include "twoscale/material.hpp"

#include <string>
#include <vector>

namespace twoscale {

// Scalar field that is either constant or affine in x1 across the tissue
// width: lo at x1 = 0, hi at x1 = width.
struct LinearField {
  double lo = 0, hi = 0;

  LinearField() = default;
  LinearField(double v) : lo(v), hi(v) {}
  LinearField(double a, double b) : lo(a), hi(b) {}

  bool uniform() const { return lo == hi; }
  double at(double x1, double width) const { return lo + (hi - lo) * (x1 / width); }
  double slope(double width) const { return (hi - lo) / width; }
  double mean() const { return 0.5 * (lo + hi); }
  bool operator==(const LinearField&) const = default;
};

// Everything that defines a tissue simulation, shared by the micro, macro
// and coupled drivers. Defaults are the reference configuration.
struct ModelParams {
  double l1 = 1.0;
  LinearField l2{1.0};
  double theta_deg = 30.0;
  LinearField w{0.05};
  double cell_scale = 4.0;

  LinearField young{1.0};
  LinearField poisson{0.3};
  LinearField pressure{0.001};

  GrowthLaw law = GrowthLaw::Strain;
  LinearField eta{1.0};
  LinearField tau{0.0};
  double clamp_bound = 1e6;

  Vec2 traction = Vec2::Zero(); // on OUTER_OTHER edges

  int Nx = 16;
  double edges_per_wall = 25; // triangle edges per wall length l2
  double fine_edge = 0.1;
  double coarse_edge = 1.0;
  double dt = 1.0;
  double t_max = 60.0;

  int steps() const;
  CellGeometry geometry_at(double x1, double width) const;
  CellGeometry reference_geometry() const; // field means
  TissueLayout layout() const;
  GrowthParams growth_at(double x1, double width) const;
  // Throws InvalidInput naming the offending parameter.
  void validate() const;
};

struct TrajectoryRow {
  double t = 0;
  double mean_growth_rate = 0; // area-weighted tr(G)/2
  double mean_det_fg = 1;
  double u_l2 = 0;
};

// Counters for the growth-tensor contract over a run.
struct GrowthAudit {
  int det_decreased = 0;
  int large_steps = 0;
  int det_below_one = 0;
  double min_det = 1.0;
  double max_identity_deviation = 0.0; // max |Fg - I| seen
  void record(const Mat2& before, const Mat2& after, const StepReport& r);
  bool contract_ok() const { return det_decreased == 0 && det_below_one == 0; }
};

// Segments of a deformed outline.
struct Outline {
  std::vector<std::pair<Vec2, Vec2>> segments;
};

// Free outer boundary (OUTER_OTHER edges) moved by u (P1 field). The bottom
// line is held at x2 = 0 by the slider in every model, and in the cellular
// tissue it is interrupted by the cut voids, so it is left out.
Outline deformed_outline(const Mesh2D& mesh, const Eigen::VectorXd& u);

// Polyline through the boundary nodes that touch the left, top and right
// sides of the reference bounding box [0, width] x [0, height], moved by u.
// For the cellular tissue this bridges the notches between boundary cells,
// which have no counterpart in a homogenized rectangle. On a rectangle mesh
// it traces the same curve as deformed_outline.
std::vector<int> envelope_nodes(const Mesh2D& mesh, double width, double height);
Outline envelope_outline(const Mesh2D& mesh, const Eigen::VectorXd& u, double width, double height);

Outline polyline(const std::vector<Vec2>& points);

double hausdorff_distance(const Outline& a, const Outline& b);
double outline_width(const Outline& o);

} // namespace twoscale
