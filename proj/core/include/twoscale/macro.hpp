#pragma once

#include "twoscale/fem.hpp"
#include "twoscale/model.hpp"
#include "twoscale/unit_cell.hpp"

#include <memory>
#include <vector>

namespace twoscale {

// Effective coefficients and growth state per fine element.
struct MacroFields {
  std::vector<HomogenizedProps> props;
  std::vector<Mat2> fg;

  static MacroFields uniform(int num_elements, const HomogenizedProps& p, const Mat2& fg = Mat2::Identity());
};

struct HomStressStrain {
  Mat2 strain = Mat2::Zero(); // eps_hom
  Mat2 stress = Mat2::Zero(); // sigma_hom
};

// Homogenized tissue on a rectangle [0, width] x [0, height] with P1
// elements, slider on the bottom edge and traction on the other edges.
class MacroModel {
 public:
  MacroModel(const ModelParams& params, Mesh2D mesh, double width);

  const ModelParams& params() const { return params_; }
  const Mesh2D& mesh() const { return *mesh_; }
  const FESpace& space() const { return *space_; }
  double width() const { return width_; }
  double pressure_at(const Vec2& x) const { return params_.pressure.at(x.x(), width_); }

  Vector solve(const MacroFields& fields, SolveReport* report = nullptr) const;

  // Element-wise eps_hom and sigma_hom, P1 taken at the element centroid.
  std::vector<HomStressStrain> hom_stress_strain(const Vector& u, const MacroFields& fields) const;

  // clamp(eta [X / wall_fraction - tau I]+, M) per element, eta and tau at centroids.
  std::vector<Mat2> growth_rates(const std::vector<HomStressStrain>& hs, const MacroFields& fields) const;

  double mean_growth_rate(const std::vector<Mat2>& g) const;
  double mean_det(const std::vector<Mat2>& fg) const;
  double l2_norm(const Vector& u) const;

 private:
  ModelParams params_;
  std::unique_ptr<Mesh2D> mesh_;
  std::unique_ptr<FESpace> space_;
  double width_;
  std::vector<int> bottom_nodes_;
};

// Componentwise weighted combination of homogenized properties.
HomogenizedProps blend(const std::vector<const HomogenizedProps*>& p, const std::vector<double>& w);

} // namespace twoscale
