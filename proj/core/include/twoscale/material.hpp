#pragma once

#include "twoscale/types.hpp"

#include <array>

namespace twoscale {

// Plane elasticity tensor stored as its six independent components
// (E1111, E2222, E1122, E1212, E1112, E2212). Minor and major symmetries are
// implied by the storage.
struct ElasticTensor2D {
  std::array<double, 6> c{};

  double e1111() const { return c[0]; }
  double e2222() const { return c[1]; }
  double e1122() const { return c[2]; }
  double e1212() const { return c[3]; }
  double e1112() const { return c[4]; }
  double e2212() const { return c[5]; }

  // 3x3 matrix acting on (e11, e22, 2 e12).
  Eigen::Matrix3d voigt() const;
  static ElasticTensor2D from_voigt(const Eigen::Matrix3d& d);

  ElasticTensor2D operator*(double s) const;
  ElasticTensor2D operator+(const ElasticTensor2D& o) const;
  bool operator==(const ElasticTensor2D&) const = default;
};

struct OrthotropicProps {
  double e1, e2, nu12, g12;
};

// Rejects E <= 0 and nu outside (-1, 0.5).
ElasticTensor2D isotropic_plane_stress(double young, double poisson);

Mat2 contract(const ElasticTensor2D& t, const Mat2& eps);

// Requires |E1112| + |E2212| <= rel_tol * max |component|.
OrthotropicProps orthotropic_props(const ElasticTensor2D& t, double rel_tol = 1e-8);

// Positive definiteness of the Voigt matrix.
bool is_positive_definite(const ElasticTensor2D& t);

} // namespace twoscale
