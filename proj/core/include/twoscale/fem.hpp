#pragma once

#include "twoscale/material.hpp"
#include "twoscale/mesh.hpp"

#include <Eigen/Sparse>

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

namespace twoscale {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

struct QuadPoint {
  std::array<double, 3> bary;
  double weight; // sums to 1 over the reference triangle
};

// Degree 2 (3 points) for P1 forms, degree 4 (6 points) for P2 forms.
const std::vector<QuadPoint>& triangle_rule(int degree);
// Gauss-Legendre on [0, 1], weights sum to 1.
const std::vector<std::pair<double, double>>& edge_rule();

// Vector-valued Lagrange space. Scalar node k carries dofs 2k and 2k+1;
// nodes [0, mesh nodes) are the mesh vertices, P2 edge nodes follow.
// Local order for P2: vertices 0,1,2 then edges (0,1), (1,2), (2,0).
class FESpace {
 public:
  FESpace(const Mesh2D& mesh, int order);

  const Mesh2D& mesh() const { return *mesh_; }
  int order() const { return order_; }
  int local_size() const { return order_ == 1 ? 3 : 6; }
  int num_scalar_nodes() const { return static_cast<int>(points_.size()); }
  int num_dofs() const { return 2 * num_scalar_nodes(); }
  const std::vector<Vec2>& points() const { return points_; }
  const std::array<int, 6>& element_nodes(int t) const { return elem_[t]; }
  // Scalar nodes of a boundary edge in order a, (mid), b.
  std::vector<int> edge_nodes(const BoundaryEdge& e) const;
  // Periodic pairs for every scalar node, P2 edge nodes included.
  std::vector<PeriodicPair> periodic_pairs() const;

  // Shape values and physical gradients at a barycentric point of element t.
  void shape(int t, const std::array<double, 3>& bary, double* n, Vec2* grad) const;
  Vec2 map_point(int t, const std::array<double, 3>& bary) const;

 private:
  const Mesh2D* mesh_;
  int order_;
  std::vector<Vec2> points_;
  std::vector<std::array<int, 6>> elem_;
  std::vector<std::pair<std::pair<int, int>, int>> edge_mid_; // sorted (a,b) -> node
  int mid_node(int a, int b) const;
};

// Per-element coefficients of the generalized elasticity form
//   integral of J E sym(grad u Fg^-1) : grad phi Fg^-1.
struct ElementCoefficients {
  std::vector<ElasticTensor2D> tensor;
  std::vector<Mat2> fg;

  static ElementCoefficients uniform(int num_elements, const ElasticTensor2D& e, const Mat2& fg = Mat2::Identity());
};

// Rejects elements with det Fg < 1 - 1e-10.
SparseMatrix assemble_stiffness(const FESpace& space, const ElementCoefficients& coef);

using StressDensity = std::function<Mat2(int elem, const Vec2& x)>;
using ForceDensity = std::function<Vec2(int elem, const Vec2& x)>;
using EdgeDensity = std::function<Vec2(const BoundaryEdge& e, const Vec2& x)>;

// f += integral J sigma : grad phi Fg^-1 (sigma symmetric).
void add_stress_load(Vector& f, const FESpace& space, const std::vector<Mat2>& fg, const StressDensity& sigma);
// f += integral b . phi
void add_body_force(Vector& f, const FESpace& space, const ForceDensity& b);
// f += integral over the selected boundary edges of t . phi
void add_edge_load(Vector& f, const FESpace& space, const std::function<bool(const BoundaryEdge&)>& select,
                   const EdgeDensity& t);

// Coefficients c with c . u = integral of u_comp over the mesh.
Vector mean_functional(const FESpace& space, int comp);
// c . u = integral of (d1 u2 - d2 u1).
Vector rotation_functional(const FESpace& space);
// Rigid modes: translation along comp, and the infinitesimal rotation.
Vector translation_mode(const FESpace& space, int comp);
Vector rotation_mode(const FESpace& space);

// Integral of grad u over element t (rows: components, cols: derivatives).
Mat2 element_gradient_integral(const FESpace& space, const Vector& u, int t);
Mat2 gradient_at(const FESpace& space, const Vector& u, int t, const std::array<double, 3>& bary);
Vec2 value_at(const FESpace& space, const Vector& u, int t, const std::array<double, 3>& bary);

struct StrainStress {
  Mat2 strain; // elastic strain sym(grad u Fg^-1) + sym(Fg^-1) - I
  Mat2 stress; // E strain
};

// Element means (P1: exact constants; P2: mean over the element).
std::vector<StrainStress> evaluate_strain_stress(const FESpace& space, const Vector& u, const ElementCoefficients& coef);

// Coordinate-format dump, one "i j value" line per stored entry.
void write_coo(std::ostream& os, const SparseMatrix& m);

// --- constrained solve -------------------------------------------------------

struct IntegralConstraint {
  Vector c;
  double value = 0;
};

struct Constraints {
  std::vector<PeriodicPair> periodic;       // slave dofs follow their master
  std::vector<std::pair<int, double>> fixed; // (dof, value)
  std::vector<IntegralConstraint> integrals; // appended as Lagrange rows
  // Optional kernel of the constrained stiffness (full-space vectors). When
  // supplied and verified, the solver factorizes an SPD pinned subsystem;
  // otherwise it falls back to a bordered LU solve.
  std::vector<Vector> nullspace;
};

struct SolveReport {
  double residual = 0;
  double rhs_norm = 0;
  bool pinned_path = false;
  int refinements = 0;
};

// Factorizes once, solves for any number of load vectors.
class ConstrainedSolver {
 public:
  ConstrainedSolver(const SparseMatrix& k, const Constraints& cons, double rtol = 1e-10);
  ~ConstrainedSolver();
  ConstrainedSolver(const ConstrainedSolver&) = delete;
  ConstrainedSolver& operator=(const ConstrainedSolver&) = delete;

  // Throws NumericalFailure if the bordered residual exceeds rtol * |rhs|.
  Vector solve(const Vector& f, SolveReport* report = nullptr) const;
  int num_reduced() const;

 private:
  struct Impl;
  Impl* impl_;
};

Vector solve_constrained(const SparseMatrix& k, const Vector& f, const Constraints& cons, double rtol = 1e-10,
                         SolveReport* report = nullptr);

} // namespace twoscale
