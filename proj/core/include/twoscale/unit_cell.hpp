#pragma once

#include "twoscale/fem.hpp"
#include "twoscale/geometry.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace twoscale {

struct HomogenizedProps {
  ElasticTensor2D e_hom;
  Mat2 k_hom = Mat2::Zero();
  Vec2 p2vec = Vec2::Zero(); // (1/|Y|) boundary integral of P2 N over Gamma
  double wall_fraction = 1.0;
  // (1/|Y|) integral over Y_w of sym(grad w F^-1), for w11, w22, w12
  std::array<Mat2, 3> mean_dw{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
  Mat2 mean_dv = Mat2::Zero();
};

// Periodic corrector fields on Y_w; index 0,1,2 -> w11, w22, w12.
struct ElementaryDeformations {
  std::array<Vector, 3> w;
  Vector v;
};

// P2 discretization of the wall domain of one unit cell. The mesh is built
// once and reused for any (E, Fg) pair.
class UnitCellSolver {
 public:
  UnitCellSolver(const CellGeometry& geom, double edges_per_unit);

  const UnitCellDomain& domain() const { return domain_; }
  const Mesh2D& mesh() const { return *mesh_; }
  const FESpace& space() const { return *space_; }

  ElementaryDeformations solve_cell_problems(const ElasticTensor2D& e, const Mat2& fg) const;

  // alpha is the slope of the affine turgor pressure along x1, so that the
  // periodic corrector is P2 = -alpha (y1 - mean y1).
  HomogenizedProps effective_props(const ElementaryDeformations& defs, const ElasticTensor2D& e, const Mat2& fg,
                                   double alpha) const;

  HomogenizedProps compute(const ElasticTensor2D& e, const Mat2& fg, double alpha = 0.0) const {
    return effective_props(solve_cell_problems(e, fg), e, fg, alpha);
  }

 private:
  UnitCellDomain domain_;
  std::unique_ptr<Mesh2D> mesh_;
  std::unique_ptr<FESpace> space_;
  Vec2 mean_y_ = Vec2::Zero();
};

// One row of a property curve, moduli normalized by the wall modulus.
struct PropertyRow {
  double x = 0;
  double e1 = 0, e2 = 0, nu12 = 0, g12 = 0;
  double k11 = 0, k22 = 0, k12 = 0;
  double wall_fraction = 0;
};

PropertyRow property_row(double x, const HomogenizedProps& p, double wall_modulus);

enum class SweepKind { WallThickness, Growth };

struct SweepSpec {
  SweepKind kind = SweepKind::WallThickness;
  double start = 0.02, stop = 1.0;
  int count = 25;
  std::vector<double> values() const;
};

// name=start:stop:count with name w_over_l2 or g.
SweepSpec parse_sweep(const std::string& text);

// w/l2 sweep at Fg = I, or g sweep with Fg = diag(g, 1) at the given w.
// Points are solved in parallel; rows come back in sweep order.
std::vector<PropertyRow> property_curves(const SweepSpec& sweep, const CellGeometry& base, double young, double poisson,
                                         double edges_per_unit, int threads = 1);

} // namespace twoscale
