#include "twoscale/locator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twoscale {

PointLocator::PointLocator(const Mesh2D& mesh) : mesh_(&mesh) {
  if (mesh.triangles.empty()) throw InvalidInput("cannot locate points in an empty mesh");
  Vec2 lo = mesh.nodes[0], hi = mesh.nodes[0];
  for (const auto& p : mesh.nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const int n = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(mesh.num_triangles()))));
  const Vec2 ext = (hi - lo).cwiseMax(Vec2::Constant(1e-300));
  const double aspect = ext.x() / ext.y();
  nx_ = std::max(1, static_cast<int>(std::round(n * std::sqrt(aspect))));
  ny_ = std::max(1, static_cast<int>(std::round(n / std::sqrt(aspect))));
  lo_ = lo;
  cell_ = Vec2(ext.x() / nx_, ext.y() / ny_);
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    Vec2 tl = mesh.nodes[mesh.triangles[t][0]], th = tl;
    for (int k = 1; k < 3; ++k) {
      tl = tl.cwiseMin(mesh.nodes[mesh.triangles[t][k]]);
      th = th.cwiseMax(mesh.nodes[mesh.triangles[t][k]]);
    }
    const int i0 = bucket(tl.x(), lo_.x(), cell_.x(), nx_), i1 = bucket(th.x(), lo_.x(), cell_.x(), nx_);
    const int j0 = bucket(tl.y(), lo_.y(), cell_.y(), ny_), j1 = bucket(th.y(), lo_.y(), cell_.y(), ny_);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(t);
  }
}

int PointLocator::bucket(double v, double lo, double h, int n) const {
  return std::clamp(static_cast<int>(std::floor((v - lo) / h)), 0, n - 1);
}

std::array<double, 3> PointLocator::bary(int t, const Vec2& p) const {
  const auto& tri = mesh_->triangles[t];
  const Vec2 &a = mesh_->nodes[tri[0]], &b = mesh_->nodes[tri[1]], &c = mesh_->nodes[tri[2]];
  const double det = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  const Vec2 d = p - a;
  const double l1 = (d.x() * (c - a).y() - d.y() * (c - a).x()) / det;
  const double l2 = ((b - a).x() * d.y() - (b - a).y() * d.x()) / det;
  return {1 - l1 - l2, l1, l2};
}

Location PointLocator::locate(const Vec2& p) const {
  const double eps = 1e-12;
  const int i = bucket(p.x(), lo_.x(), cell_.x(), nx_), j = bucket(p.y(), lo_.y(), cell_.y(), ny_);
  for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
    const auto b = bary(t, p);
    if (b[0] >= -eps && b[1] >= -eps && b[2] >= -eps) return {t, b, 0.0};
  }
  // outside: nearest triangle by clamped barycentric projection
  Location best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    auto b = bary(t, p);
    for (double& v : b) v = std::max(v, 0.0);
    const double s = b[0] + b[1] + b[2];
    for (double& v : b) v /= s;
    const auto& tri = mesh_->triangles[t];
    const Vec2 q = b[0] * mesh_->nodes[tri[0]] + b[1] * mesh_->nodes[tri[1]] + b[2] * mesh_->nodes[tri[2]];
    const double d = (q - p).norm();
    if (d < best.distance) best = {t, b, d};
  }
  return best;
}

} // namespace twoscale
