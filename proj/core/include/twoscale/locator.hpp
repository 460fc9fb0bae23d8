#pragma once

#include "twoscale/mesh.hpp"

#include <array>
#include <vector>

namespace twoscale {

struct Location {
  int triangle = -1;
  std::array<double, 3> bary{};
  double distance = 0; // 0 when the point is inside the mesh
};

// Uniform bucket grid over triangle bounding boxes. Ties on shared edges go
// to the lowest triangle index; points outside the mesh snap to the nearest
// triangle and report their distance.
class PointLocator {
 public:
  explicit PointLocator(const Mesh2D& mesh);
  Location locate(const Vec2& p) const;

 private:
  const Mesh2D* mesh_;
  Vec2 lo_, cell_;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
  std::array<double, 3> bary(int t, const Vec2& p) const;
  int bucket(double v, double lo, double h, int n) const;
};

} // namespace twoscale
