#include "twoscale/material.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twoscale {

Eigen::Matrix3d ElasticTensor2D::voigt() const {
  Eigen::Matrix3d d;
  d << c[0], c[2], c[4],
       c[2], c[1], c[5],
       c[4], c[5], c[3];
  return d;
}

ElasticTensor2D ElasticTensor2D::from_voigt(const Eigen::Matrix3d& d) {
  // symmetrize so that round-off in assembled averages does not leak through
  const auto s = [&](int i, int j) { return 0.5 * (d(i, j) + d(j, i)); };
  return {{d(0, 0), d(1, 1), s(0, 1), d(2, 2), s(0, 2), s(1, 2)}};
}

ElasticTensor2D ElasticTensor2D::operator*(double s) const {
  ElasticTensor2D r = *this;
  for (auto& v : r.c) v *= s;
  return r;
}

ElasticTensor2D ElasticTensor2D::operator+(const ElasticTensor2D& o) const {
  ElasticTensor2D r = *this;
  for (int i = 0; i < 6; ++i) r.c[i] += o.c[i];
  return r;
}

ElasticTensor2D isotropic_plane_stress(double young, double poisson) {
  if (!(young > 0.0)) {
    std::ostringstream os;
    os << "Young modulus must be positive, got " << young;
    throw InvalidInput(os.str());
  }
  if (!(poisson > -1.0 && poisson < 0.5)) {
    std::ostringstream os;
    os << "Poisson ratio must lie in (-1, 0.5), got " << poisson;
    throw InvalidInput(os.str());
  }
  const double mu = young / (2.0 * (1.0 + poisson));
  const double lambda = young * poisson / (1.0 - poisson * poisson);
  return {{2.0 * mu + lambda, 2.0 * mu + lambda, lambda, mu, 0.0, 0.0}};
}

Mat2 contract(const ElasticTensor2D& t, const Mat2& eps) {
  const Eigen::Vector3d e(eps(0, 0), eps(1, 1), eps(0, 1) + eps(1, 0));
  const Eigen::Vector3d s = t.voigt() * e;
  Mat2 sigma;
  sigma << s(0), s(2), s(2), s(1);
  return sigma;
}

OrthotropicProps orthotropic_props(const ElasticTensor2D& t, double rel_tol) {
  double mx = 0.0;
  for (double v : t.c) mx = std::max(mx, std::abs(v));
  if (std::abs(t.e1112()) + std::abs(t.e2212()) > rel_tol * mx) {
    std::ostringstream os;
    os << "tensor is not orthotropic in the coordinate axes (E1112=" << t.e1112()
       << ", E2212=" << t.e2212() << ")";
    throw InvalidInput(os.str());
  }
  const double a = t.e1111(), b = t.e2222(), c = t.e1122();
  return {a - c * c / b, b - c * c / a, c / b, t.e1212()};
}

bool is_positive_definite(const ElasticTensor2D& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.voigt());
  return es.eigenvalues().minCoeff() > 0.0;
}

} // namespace twoscale
