#pragma once

#include "twoscale/fem.hpp"

#include <vector>

namespace twoscale::oracle {

// Textbook constant-strain-triangle stiffness t A B^T D B for unit thickness,
// dofs ordered (u1, v1, u2, v2, u3, v3).
Eigen::Matrix<double, 6, 6> cst_stiffness(const std::array<Vec2, 3>& x, const ElasticTensor2D& e);

// Largest entry difference between cst_stiffness and the assembled matrix of
// a one-triangle mesh, relative to the largest entry.
double cst_mismatch(const std::array<Vec2, 3>& x, const ElasticTensor2D& e);

struct Convergence {
  std::vector<double> h;      // 1 / cells per side
  std::vector<double> error;  // L2 displacement error
  std::vector<double> order;  // log2 ratios between consecutive levels
};

// u = (sin pi x sin pi y, 0) on the unit square, homogeneous Dirichlet data,
// isotropic walls, body force from the closed-form divergence of the stress.
Convergence manufactured_convergence(int fe_order, const std::vector<int>& cells_per_side,
                                     const ElasticTensor2D& e);

} // namespace twoscale::oracle
