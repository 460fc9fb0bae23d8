#pragma once

#include "twoscale/locator.hpp"
#include "twoscale/macro.hpp"
#include "twoscale/unit_cell.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace twoscale {

struct CoupledOptions {
  bool memoize = true; // solve each distinct (geometry, E, nu, Fg) once per step
  int threads = 1;
  double proj_tol = 1e-8;
};

struct CoupledStep {
  int step = 0;
  double t = 0;
  const Vector* u = nullptr;
  const MacroFields* fields = nullptr;                // per fine element
  const std::vector<HomogenizedProps>* coarse = nullptr; // per coarse element
  const std::vector<Mat2>* fg_nodal = nullptr;        // fine nodes, state of record
};

struct CoupledResult {
  std::vector<TrajectoryRow> trajectory;
  Vector u;
  Vector u_first;
  std::vector<Mat2> fg_nodal;
  GrowthAudit audit;
  long unit_cell_solves = 0;
  std::string error;
  bool ok() const { return error.empty(); }
};

// Two-mesh homogenized model: unit-cell problems on a coarse mesh, the
// macroscopic problem and the growth state on a fine mesh of the same
// rectangle as the cellular tissue.
class CoupledModel {
 public:
  explicit CoupledModel(const ModelParams& params, CoupledOptions options = {});

  const ModelParams& params() const { return params_; }
  const CoupledOptions& options() const { return options_; }
  const MacroModel& macro() const { return *macro_; }
  const Mesh2D& fine() const { return macro_->mesh(); }
  const Mesh2D& coarse() const { return *coarse_; }
  double width() const { return width_; }
  double height() const { return height_; }

  // Unit-cell properties per coarse element for the given coarse Fg.
  std::vector<HomogenizedProps> coarse_properties(const std::vector<Mat2>& fg_coarse, long* solves = nullptr) const;

  // Coarse element values -> coarse nodes (area average) -> P1 at fine nodes.
  std::vector<HomogenizedProps> interpolate_coarse_to_fine(const std::vector<HomogenizedProps>& coarse_elem) const;
  std::vector<double> interpolate_coarse_to_fine(const std::vector<double>& coarse_nodal) const;

  // Area-weighted mean of the fine Fg over the fine elements whose centroid
  // lies in each coarse element. Throws NumericalFailure if a projected
  // determinant drops below 1 - proj_tol.
  std::vector<Mat2> project_fine_to_coarse(const std::vector<Mat2>& fg_nodal) const;

  // Fine element fields as the mean of their three nodal values.
  MacroFields fine_fields(const std::vector<HomogenizedProps>& nodal_props, const std::vector<Mat2>& fg_nodal) const;

 private:
  ModelParams params_;
  CoupledOptions options_;
  double width_ = 0, height_ = 0;
  std::unique_ptr<MacroModel> macro_;
  std::unique_ptr<Mesh2D> coarse_;
  std::vector<std::unique_ptr<UnitCellSolver>> cells_; // distinct geometries
  std::vector<int> coarse_cell_;                        // coarse element -> cells_ index
  std::vector<Location> fine_in_coarse_;                // per fine node
  std::vector<int> fine_elem_owner_;                    // fine element -> coarse element
};

// Area-weighted element-to-node average on a mesh.
std::vector<Mat2> element_to_node(const Mesh2D& mesh, const std::vector<Mat2>& elem);
std::vector<double> element_to_node(const Mesh2D& mesh, const std::vector<double>& elem);

using CoupledObserver = std::function<void(const CoupledStep&)>;

// Per step: project Fg, unit cells, interpolate, macro solve, growth rates,
// Euler update of the nodal Fg. Failures end the run with a partial result.
CoupledResult run_coupled(const CoupledModel& model, const CoupledObserver& observer = {});

} // namespace twoscale
