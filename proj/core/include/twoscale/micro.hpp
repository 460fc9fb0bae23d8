#pragma once

#include "twoscale/fem.hpp"
#include "twoscale/model.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace twoscale {

struct CellAverage {
  Mat2 stress = Mat2::Zero();
  Mat2 strain = Mat2::Zero();
};

// Cellular tissue discretized with P1 elements. Each mesh region is one cell
// and carries one growth tensor.
class MicroModel {
 public:
  explicit MicroModel(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  const TissueDomain& domain() const { return domain_; }
  const Mesh2D& mesh() const { return *mesh_; }
  const FESpace& space() const { return *space_; }
  int num_regions() const { return static_cast<int>(region_area_.size()); }
  const std::vector<double>& region_area() const { return region_area_; }
  // Lattice centre of each cell (below the bottom line for cut cells).
  const std::vector<Vec2>& region_anchor() const { return anchor_; }

  double pressure_at(const Vec2& x) const { return params_.pressure.at(x.x(), domain_.width); }
  // Per-cell constant pressure P1(anchor); the interface sees P_cell - P1(x).
  double cell_pressure(int region) const { return pressure_at(anchor_[region]); }

  // Elasticity solve for the given per-region growth tensors.
  Vector solve(const std::vector<Mat2>& fg, SolveReport* report = nullptr) const;

  // Area-weighted means of stress and elastic strain over each region.
  std::vector<CellAverage> cell_averages(const Vector& u, const std::vector<Mat2>& fg) const;

  // Per-region growth rates from the cell averages.
  std::vector<Mat2> growth_rates(const std::vector<CellAverage>& avg) const;
  // Area-weighted mean of tr(G)/2 over the tissue.
  double mean_growth_rate(const std::vector<Mat2>& g) const;
  double mean_det(const std::vector<Mat2>& fg) const;
  double l2_norm(const Vector& u) const;

 private:
  ElementCoefficients coefficients(const std::vector<Mat2>& fg) const;

  ModelParams params_;
  TissueDomain domain_;
  std::unique_ptr<Mesh2D> mesh_;
  std::unique_ptr<FESpace> space_;
  std::vector<ElasticTensor2D> tensor_; // per element
  std::vector<double> region_area_;
  std::vector<Vec2> anchor_;
  std::vector<int> bottom_nodes_;
};

struct MicroResult {
  std::vector<TrajectoryRow> trajectory;
  Vector u;                // displacement at the last completed step
  std::vector<Mat2> fg;    // growth tensors used for that solve
  Vector u_first;          // displacement of the first step
  GrowthAudit audit;
  std::string error;       // non-empty if a step failed
  bool ok() const { return error.empty(); }
};

// Called after each solve with (step, t, u, fg).
using MicroObserver = std::function<void(int, double, const Vector&, const std::vector<Mat2>&)>;

// Solve, average, grow, repeat: t_max/dt + 1 solves with an Euler update
// between consecutive solves. A failing step ends the run with the partial
// trajectory and the diagnostic in MicroResult::error.
MicroResult micro_time_loop(const MicroModel& model, const MicroObserver& observer = {});

} // namespace twoscale
