#include "twoscale/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace twoscale {

int ModelParams::steps() const { return static_cast<int>(std::llround(t_max / dt)); }

CellGeometry ModelParams::geometry_at(double x1, double width) const {
  return {l1, l2.at(x1, width), theta_deg, w.at(x1, width)};
}

CellGeometry ModelParams::reference_geometry() const { return {l1, l2.mean(), theta_deg, w.mean()}; }

TissueLayout ModelParams::layout() const {
  if (!l2.uniform() || !w.uniform())
    throw InvalidInput("the cellular model needs uniform cell geometry; geometry gradients are coupled-only");
  return {Nx, cell_scale, reference_geometry()};
}

GrowthParams ModelParams::growth_at(double x1, double width) const {
  return {eta.at(x1, width), tau.at(x1, width), clamp_bound, law};
}

void ModelParams::validate() const {
  auto fail = [](const std::string& key, const std::string& what) {
    throw InvalidInput("invalid " + key + ": " + what);
  };
  for (double v : {young.lo, young.hi})
    if (!(v > 0)) fail("material.E", "Young modulus must be positive");
  for (double v : {poisson.lo, poisson.hi})
    if (!(v > -1 && v < 0.5)) fail("material.nu", "Poisson ratio must lie in (-1, 0.5)");
  for (double v : {eta.lo, eta.hi})
    if (!(v >= 0)) fail("growth.eta", "extensibility must be >= 0");
  if (!(clamp_bound > 0)) fail("growth.M", "clamp bound must be positive");
  if (Nx < 2 || Nx % 2) fail("tissue.Nx", "must be even and >= 2");
  if (!(edges_per_wall > 0)) fail("mesh.edges_per_wall", "must be positive");
  if (!(fine_edge > 0)) fail("mesh.fine_edge_len", "must be positive");
  if (!(coarse_edge > 0)) fail("mesh.coarse_edge_len", "must be positive");
  if (!(dt > 0)) fail("time.dt", "must be positive");
  if (!(t_max >= 0)) fail("time.t_max", "must be >= 0");
  if (!(cell_scale > 0)) fail("geometry.cell_scale", "must be positive");
  try {
    for (double l : {l2.lo, l2.hi})
      for (double ww : {w.lo, w.hi}) hexagon_frame({l1, l, theta_deg, ww});
  } catch (const InvalidInput& e) {
    fail("geometry", e.what());
  }
}

void GrowthAudit::record(const Mat2& before, const Mat2& after, const StepReport& r) {
  if (r.det_decreased) ++det_decreased;
  if (r.large_step) ++large_steps;
  const double d = after.determinant();
  if (d < 1 - 1e-12) ++det_below_one;
  min_det = std::min(min_det, d);
  (void)before;
  max_identity_deviation = std::max(max_identity_deviation, (after - Mat2::Identity()).cwiseAbs().maxCoeff());
}

Outline deformed_outline(const Mesh2D& mesh, const Eigen::VectorXd& u) {
  Outline o;
  auto moved = [&](int n) { return Vec2(mesh.nodes[n] + Vec2(u[2 * n], u[2 * n + 1])); };
  for (const auto& e : mesh.boundary_edges)
    if (e.tag == BoundaryTag::OuterOther) o.segments.push_back({moved(e.a), moved(e.b)});
  return o;
}

std::vector<int> envelope_nodes(const Mesh2D& mesh, double width, double height) {
  const double tol = 1e-9 * std::max(width, height);
  std::vector<int> left, top, right;
  std::vector<char> on(mesh.num_nodes(), 0);
  for (const auto& e : mesh.boundary_edges)
    if (e.tag != BoundaryTag::CellInterface) on[e.a] = on[e.b] = 1;
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    if (!on[n]) continue;
    const Vec2& x = mesh.nodes[n];
    if (std::abs(x.x()) <= tol) left.push_back(n);
    else if (std::abs(x.x() - width) <= tol) right.push_back(n);
    else if (std::abs(x.y() - height) <= tol) top.push_back(n);
  }
  if (left.empty() || right.empty()) throw InvalidInput("mesh does not touch the sides of its bounding box");
  const auto& X = mesh.nodes;
  std::sort(left.begin(), left.end(), [&](int i, int j) { return X[i].y() < X[j].y(); });
  std::sort(top.begin(), top.end(), [&](int i, int j) { return X[i].x() < X[j].x(); });
  std::sort(right.begin(), right.end(), [&](int i, int j) { return X[i].y() > X[j].y(); });
  left.insert(left.end(), top.begin(), top.end());
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

Outline polyline(const std::vector<Vec2>& points) {
  Outline o;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) o.segments.push_back({points[k], points[k + 1]});
  return o;
}

Outline envelope_outline(const Mesh2D& mesh, const Eigen::VectorXd& u, double width, double height) {
  std::vector<Vec2> pts;
  for (int n : envelope_nodes(mesh, width, height)) pts.push_back(mesh.nodes[n] + Vec2(u[2 * n], u[2 * n + 1]));
  return polyline(pts);
}

namespace {

double point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double l2 = ab.squaredNorm();
  const double t = l2 > 0 ? std::clamp((p - a).dot(ab) / l2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

// max over sample points of a of the distance to the segment set b
double directed(const Outline& a, const Outline& b) {
  double worst = 0;
  for (const auto& [p, q] : a.segments)
    for (int k = 0; k <= 4; ++k) {
      const Vec2 x = p + (q - p) * (k / 4.0);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [c, d] : b.segments) best = std::min(best, point_segment(x, c, d));
      worst = std::max(worst, best);
    }
  return worst;
}

} // namespace

double hausdorff_distance(const Outline& a, const Outline& b) {
  if (a.segments.empty() || b.segments.empty()) throw InvalidInput("empty outline");
  return std::max(directed(a, b), directed(b, a));
}

double outline_width(const Outline& o) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& [p, q] : o.segments) {
    lo = std::min({lo, p.x(), q.x()});
    hi = std::max({hi, p.x(), q.x()});
  }
  return hi - lo;
}

} // namespace twoscale
