#include "twoscale/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace twoscale {

namespace {

constexpr double kRoundGuard = 1e-9;

int segments_for(double len, double epu) {
  return std::max(1, static_cast<int>(std::ceil(len * epu - kRoundGuard)));
}

Vec2 left_normal(const Vec2& t) { return Vec2(-t.y(), t.x()); }

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 intersect_lines(const Vec2& p, const Vec2& dp, const Vec2& q, const Vec2& dq) {
  const double den = cross(dp, dq);
  if (std::abs(den) < 1e-14) throw InvalidInput("parallel wall lines while offsetting the cell outline");
  return p + dp * (cross(q - p, dq) / den);
}

std::string fmt_poly(const std::vector<Vec2>& poly) {
  std::ostringstream os;
  os << "[";
  for (const auto& p : poly) os << " (" << p.x() << ", " << p.y() << ")";
  os << " ]";
  return os.str();
}

// Hash of merged node positions; two points closer than tol share an id.
class PointIndex {
 public:
  explicit PointIndex(double tol) : tol_(tol), cell_(2.0 * tol) {}

  int find(const Vec2& p, const std::vector<Vec2>& pts) const {
    const long cx = key(p.x()), cy = key(p.y());
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        const auto it = buckets_.find(pack(cx + dx, cy + dy));
        if (it == buckets_.end()) continue;
        for (int id : it->second)
          if ((pts[id] - p).norm() <= tol_) return id;
      }
    return -1;
  }

  void insert(const Vec2& p, int id) { buckets_[pack(key(p.x()), key(p.y()))].push_back(id); }

 private:
  long key(double v) const { return static_cast<long>(std::floor(v / cell_)); }
  static std::uint64_t pack(long x, long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
  }
  double tol_, cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

class MeshBuilder {
 public:
  MeshBuilder(double diameter, double edges_per_unit)
      : tol_(1e-9 * diameter), epu_(edges_per_unit), index_(tol_) {
    if (!(edges_per_unit > 0)) throw InvalidInput("edges per unit length must be positive");
  }

  int node(const Vec2& p) {
    int id = index_.find(p, mesh_.nodes);
    if (id >= 0) return id;
    id = mesh_.num_nodes();
    mesh_.nodes.push_back(p);
    index_.insert(p, id);
    return id;
  }

  void triangle(int i, int j, int k, int region) {
    const Vec2 &a = mesh_.nodes[i], &b = mesh_.nodes[j], &c = mesh_.nodes[k];
    const double area2 = cross(b - a, c - a);
    const double scale = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    if (!(std::abs(area2) > 1e-12 * scale)) {
      std::ostringstream os;
      os << "degenerate triangle in region " << region << " at " << fmt_poly({a, b, c});
      throw InvalidInput(os.str());
    }
    if (area2 > 0)
      mesh_.triangles.push_back({i, j, k});
    else
      mesh_.triangles.push_back({i, k, j});
    mesh_.region.push_back(region);
  }

  // Points on a row from a to b; a single point when the row has collapsed.
  std::vector<int> row(const Vec2& a, const Vec2& b) {
    const double len = (b - a).norm();
    if (len <= tol_) return {node(0.5 * (a + b))};
    const int n = segments_for(len, epu_);
    std::vector<int> ids(n + 1);
    for (int i = 0; i <= n; ++i) ids[i] = node(a + (b - a) * (static_cast<double>(i) / n));
    return ids;
  }

  // Advancing-front stitch of two consecutive rows. Each step adds the
  // diagonal with the smaller parametric offset; ties go towards the nearer
  // row end and a tie at mid-row gets a centre node. The rule is invariant
  // under reversing both rows, so symmetric blocks mesh symmetrically.
  void stitch(const std::vector<int>& lo, const std::vector<int>& hi, int region) {
    const long n = static_cast<long>(lo.size()) - 1, k = static_cast<long>(hi.size()) - 1;
    long i = 0, l = 0;
    while (i < n || l < k) {
      bool advance_lo;
      if (l == k) advance_lo = true;
      else if (i == n) advance_lo = false;
      else {
        // |(i+1)/n - l/k| against |(l+1)/k - i/n|, scaled by n k
        const long d_lo = std::abs((i + 1) * k - l * n), d_hi = std::abs((l + 1) * n - i * k);
        if (d_lo != d_hi) {
          advance_lo = d_lo < d_hi;
        } else if (2 * i + 1 == n && 2 * l + 1 == k) {
          const int c = node(0.25 * (mesh_.nodes[lo[i]] + mesh_.nodes[lo[i + 1]] + mesh_.nodes[hi[l]] +
                                     mesh_.nodes[hi[l + 1]]));
          triangle(lo[i], lo[i + 1], c, region);
          triangle(lo[i + 1], hi[l + 1], c, region);
          triangle(hi[l + 1], hi[l], c, region);
          triangle(hi[l], lo[i], c, region);
          ++i;
          ++l;
          continue;
        } else {
          advance_lo = (2 * i + 1) * k + (2 * l + 1) * n < 2 * n * k;
        }
      }
      if (advance_lo) {
        triangle(lo[i], lo[i + 1], hi[l], region);
        ++i;
      } else {
        triangle(lo[i], hi[l + 1], hi[l], region);
        ++l;
      }
    }
  }

  // Stack of rows (a[j], b[j]).
  void block(const std::vector<Vec2>& a, const std::vector<Vec2>& b, int region) {
    std::vector<int> prev = row(a[0], b[0]);
    for (std::size_t j = 1; j < a.size(); ++j) {
      std::vector<int> next = row(a[j], b[j]);
      stitch(prev, next, region);
      prev = std::move(next);
    }
  }

  // Quadrilateral band between outer edge p0-p1 and inner edge q0-q1.
  void band(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1, int rows, int region) {
    std::vector<Vec2> a(rows + 1), b(rows + 1);
    for (int j = 0; j <= rows; ++j) {
      const double t = static_cast<double>(j) / rows;
      a[j] = p0 + t * (q0 - p0);
      b[j] = p1 + t * (q1 - p1);
    }
    block(a, b, region);
  }

  // Convex polygon filled by rings shrinking towards the centroid.
  void convex(const std::vector<Vec2>& poly, int region) {
    const int nv = static_cast<int>(poly.size());
    Vec2 c = Vec2::Zero();
    double area2 = 0;
    for (int e = 0; e < nv; ++e) {
      const Vec2 &p = poly[e], &q = poly[(e + 1) % nv];
      const double cr = cross(p, q);
      area2 += cr;
      c += (p + q) * cr;
    }
    if (!(area2 > 0)) throw InvalidInput("polygon is degenerate or clockwise: " + fmt_poly(poly));
    c /= 3.0 * area2;
    double inradius = std::numeric_limits<double>::infinity();
    for (int e = 0; e < nv; ++e) {
      const Vec2 &p = poly[e], &q = poly[(e + 1) % nv];
      inradius = std::min(inradius, std::abs(cross(q - p, c - p)) / (q - p).norm());
    }
    const int rings = std::max(1, static_cast<int>(std::ceil(inradius * epu_ - kRoundGuard)));
    for (int e = 0; e < nv; ++e) {
      const Vec2 &p = poly[e], &q = poly[(e + 1) % nv];
      std::vector<Vec2> a(rings + 1), b(rings + 1);
      for (int k = 0; k <= rings; ++k) {
        const double s = 1.0 - static_cast<double>(k) / rings;
        a[k] = c + s * (p - c);
        b[k] = c + s * (q - c);
      }
      block(a, b, region);
    }
  }

  template <class Classify>
  Mesh2D finish(Classify classify) {
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : mesh_.triangles)
      for (int k = 0; k < 3; ++k) {
        const int a = t[k], b = t[(k + 1) % 3];
        ++count[{std::min(a, b), std::max(a, b)}];
      }
    for (const auto& [e, n] : count) {
      if (n > 2) throw InvalidInput("non-manifold edge in generated mesh");
      if (n == 1) mesh_.boundary_edges.push_back({e.first, e.second, classify(mesh_.nodes[e.first], mesh_.nodes[e.second]), -1});
    }
    attach_boundary_owners(mesh_);
    return std::move(mesh_);
  }

  double tol() const { return tol_; }
  double epu() const { return epu_; }

 private:
  double tol_, epu_;
  PointIndex index_;
  Mesh2D mesh_;
};

double point_polyline_distance(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(poly.size());
  for (int e = 0; e < n; ++e) {
    const Vec2 &a = poly[e], &b = poly[(e + 1) % n];
    const Vec2 ab = b - a;
    const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    best = std::min(best, (a + t * ab - p).norm());
  }
  return best;
}

// Sutherland-Hodgman clip against x >= x0, x <= x1, y >= y0, y <= y1.
// Bucketed closed polylines for point-to-polyline distance queries.
class SegmentIndex {
 public:
  SegmentIndex(const std::vector<std::vector<Vec2>>& polys, double cell) : cell_(cell) {
    for (const auto& poly : polys)
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 &p = poly[i], &q = poly[(i + 1) % poly.size()];
        const int id = static_cast<int>(segs_.size());
        segs_.push_back({p, q});
        const Vec2 lo = p.cwiseMin(q), hi = p.cwiseMax(q);
        for (long x = key(lo.x()); x <= key(hi.x()); ++x)
          for (long y = key(lo.y()); y <= key(hi.y()); ++y) buckets_[{x, y}].push_back(id);
      }
  }

  double distance(const Vec2& p) const {
    double best = std::numeric_limits<double>::infinity();
    const long cx = key(p.x()), cy = key(p.y());
    for (long x = cx - 1; x <= cx + 1; ++x)
      for (long y = cy - 1; y <= cy + 1; ++y) {
        const auto it = buckets_.find({x, y});
        if (it == buckets_.end()) continue;
        for (int id : it->second) {
          const auto& [a, b] = segs_[id];
          const Vec2 ab = b - a;
          const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
          best = std::min(best, (a + t * ab - p).norm());
        }
      }
    return best;
  }

 private:
  long key(double v) const { return static_cast<long>(std::floor(v / cell_)); }
  double cell_;
  std::vector<std::pair<Vec2, Vec2>> segs_;
  std::map<std::pair<long, long>, std::vector<int>> buckets_;
};

std::vector<Vec2> clip_to_rect(std::vector<Vec2> poly, double x0, double x1, double y0, double y1) {
  auto clip = [](const std::vector<Vec2>& in, auto inside, auto cut) {
    std::vector<Vec2> out;
    const int n = static_cast<int>(in.size());
    for (int i = 0; i < n; ++i) {
      const Vec2 &cur = in[i], &nxt = in[(i + 1) % n];
      const bool ci = inside(cur), ni = inside(nxt);
      if (ci) out.push_back(cur);
      if (ci != ni) out.push_back(cut(cur, nxt));
    }
    return out;
  };
  auto vertical = [](double x) {
    return [x](const Vec2& p, const Vec2& q) {
      const double t = (x - p.x()) / (q.x() - p.x());
      return Vec2(x, p.y() + t * (q.y() - p.y()));
    };
  };
  auto horizontal = [](double y) {
    return [y](const Vec2& p, const Vec2& q) {
      const double t = (y - p.y()) / (q.y() - p.y());
      return Vec2(p.x() + t * (q.x() - p.x()), y);
    };
  };
  const double eps = 1e-12 * (1.0 + std::max(std::abs(x1 - x0), std::abs(y1 - y0)));
  poly = clip(poly, [&](const Vec2& p) { return p.x() >= x0 - eps; }, vertical(x0));
  poly = clip(poly, [&](const Vec2& p) { return p.x() <= x1 + eps; }, vertical(x1));
  poly = clip(poly, [&](const Vec2& p) { return p.y() >= y0 - eps; }, horizontal(y0));
  poly = clip(poly, [&](const Vec2& p) { return p.y() <= y1 + eps; }, horizontal(y1));
  // snap onto the clip lines and drop repeated vertices
  std::vector<Vec2> out;
  for (Vec2 p : poly) {
    if (std::abs(p.x() - x0) <= eps) p.x() = x0;
    if (std::abs(p.x() - x1) <= eps) p.x() = x1;
    if (std::abs(p.y() - y0) <= eps) p.y() = y0;
    if (std::abs(p.y() - y1) <= eps) p.y() = y1;
    if (out.empty() || (p - out.back()).norm() > eps) out.push_back(p);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= eps) out.pop_back();
  return out;
}

} // namespace

HexagonFrame hexagon_frame(const CellGeometry& g) {
  if (!(g.l1 > 0) || !(g.l2 > 0)) throw InvalidInput("cell wall lengths l1, l2 must be positive");
  if (!(g.w > 0)) throw InvalidInput("cell wall thickness w must be positive");
  if (!(g.theta_deg > 0 && g.theta_deg < 90)) throw InvalidInput("cell wall angle theta must lie in (0, 90) degrees");
  if (g.w > g.l2 * (1 + 1e-12)) {
    std::ostringstream os;
    os << "wall thickness w=" << g.w << " exceeds l2=" << g.l2 << ": the cell void is empty";
    throw InvalidInput(os.str());
  }
  const double th = g.theta_deg * std::numbers::pi / 180.0;
  HexagonFrame f;
  f.a = g.l2 * std::cos(th);
  f.b = g.l2 * std::sin(th);
  f.half_l1 = 0.5 * g.l1;
  f.top = f.half_l1 + f.b;
  f.h = g.l1 + f.b;
  const double cot_side = 1.0 / std::tan(std::numbers::pi / 4 + th / 2);
  f.offset = g.w / (cot_side + std::tan(th));
  f.solid = g.w >= g.l2 * (1 - 1e-12);
  if (!f.solid && g.l1 - 2 * f.offset * cot_side <= 0) {
    std::ostringstream os;
    os << "walls self-intersect: vertical void side l1 - 2 d cot(45+theta/2) = " << g.l1 - 2 * f.offset * cot_side
       << " <= 0 for l1=" << g.l1 << ", w=" << g.w;
    throw InvalidInput(os.str());
  }
  return f;
}

std::vector<Vec2> hexagon_outline(const HexagonFrame& f, const Vec2& c, double s) {
  return {c + s * Vec2(0, -f.top),      c + s * Vec2(f.a, -f.half_l1), c + s * Vec2(f.a, 0),
          c + s * Vec2(f.a, f.half_l1), c + s * Vec2(0, f.top),        c + s * Vec2(-f.a, f.half_l1),
          c + s * Vec2(-f.a, 0),        c + s * Vec2(-f.a, -f.half_l1)};
}

std::vector<Vec2> void_outline(const HexagonFrame& f, const Vec2& c, double s) {
  if (f.solid) return {};
  const auto full = hexagon_outline(f, Vec2::Zero(), 1.0);
  const std::array<int, 6> corner{0, 1, 3, 4, 5, 7};
  std::array<Vec2, 6> q;
  for (int k = 0; k < 6; ++k) {
    const Vec2& p0 = full[corner[k]];
    const Vec2& p1 = full[corner[(k + 1) % 6]];
    const Vec2& p2 = full[corner[(k + 2) % 6]];
    const Vec2 t0 = (p1 - p0).normalized(), t1 = (p2 - p1).normalized();
    q[(k + 1) % 6] = intersect_lines(p0 + f.offset * left_normal(t0), t0, p1 + f.offset * left_normal(t1), t1);
  }
  const std::vector<Vec2> local{q[0], q[1], 0.5 * (q[1] + q[2]), q[2], q[3], q[4], 0.5 * (q[4] + q[5]), q[5]};
  std::vector<Vec2> out;
  out.reserve(8);
  for (const auto& p : local) out.push_back(c + s * p);
  return out;
}

std::array<Vec2, 3> lattice_vectors(const HexagonFrame& f, double s) {
  return {Vec2(2 * f.a * s, 0), Vec2(f.a * s, f.h * s), Vec2(-f.a * s, f.h * s)};
}

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

UnitCellDomain build_unit_cell(const CellGeometry& g) {
  UnitCellDomain u;
  u.geom = g;
  u.frame = hexagon_frame(g);
  u.outer = hexagon_outline(u.frame, Vec2::Zero(), 1.0);
  u.inner = void_outline(u.frame, Vec2::Zero(), 1.0);
  u.area_cell = polygon_area(u.outer);
  u.area_wall = u.area_cell - (u.inner.empty() ? 0.0 : polygon_area(u.inner));
  return u;
}

TissueDomain build_tissue(const TissueLayout& layout) {
  if (layout.Nx < 2 || layout.Nx % 2 != 0) {
    throw InvalidInput("tissue cell count Nx must be even and >= 2, got " + std::to_string(layout.Nx));
  }
  if (!(layout.cell_scale > 0)) throw InvalidInput("geometry.cell_scale must be positive");
  TissueDomain t;
  t.layout = layout;
  t.frame = hexagon_frame(layout.geom);
  const HexagonFrame& f = t.frame;
  const double s = layout.scale();
  const int rows = layout.Nx / 2;
  t.width = 2 * layout.Nx * f.a * s;
  t.height = (rows - 1) * f.h * s + f.top * s;

  const double tile = polygon_area(hexagon_outline(f, Vec2::Zero(), s));
  const double full_void = f.solid ? 0.0 : polygon_area(void_outline(f, Vec2::Zero(), s));
  for (int r = 0; r < rows; ++r) {
    // even rows: Nx cells; odd rows: Nx - 1 cells between them
    const int first = r % 2 == 0 ? 0 : 1;
    for (int i = first; i < layout.Nx; ++i) {
      const double x = (r % 2 == 0 ? 2 * i + 1 : 2 * i) * f.a * s;
      t.cells.push_back({Vec2(x, r * f.h * s), r == 0});
      const double share = r == 0 ? 0.5 : 1.0;
      t.tile_area += share * tile;
      t.wall_area += share * (tile - full_void);
    }
  }
  return t;
}

Mesh2D triangulate(const UnitCellDomain& cell, double edges_per_unit) {
  double diam = 0;
  for (const auto& p : cell.outer)
    for (const auto& q : cell.outer) diam = std::max(diam, (p - q).norm());
  MeshBuilder mb(diam, edges_per_unit);
  if (cell.inner.empty()) {
    mb.convex(cell.outer, 0);
  } else {
    const int rows = segments_for(cell.frame.offset, edges_per_unit);
    for (int e = 0; e < 8; ++e)
      mb.band(cell.outer[e], cell.outer[(e + 1) % 8], cell.inner[e], cell.inner[(e + 1) % 8], rows, 0);
  }
  const double tol = mb.tol();
  Mesh2D mesh = mb.finish([&](const Vec2& a, const Vec2& b) {
    if (!cell.inner.empty() && point_polyline_distance(0.5 * (a + b), cell.inner) <= tol)
      return BoundaryTag::CellInterface;
    return BoundaryTag::OuterOther;
  });
  const auto lat = lattice_vectors(cell.frame);
  mesh.periodic_pairs = match_periodic_nodes(mesh, {lat.begin(), lat.end()});
  return mesh;
}

Mesh2D triangulate(const TissueDomain& tissue, double edges_per_unit) {
  const double W = tissue.width, H = tissue.height;
  MeshBuilder mb(std::hypot(W, H), edges_per_unit);
  const HexagonFrame& f = tissue.frame;
  const double s = tissue.layout.scale();
  const int rows = segments_for(f.offset * s, edges_per_unit);
  std::vector<std::vector<Vec2>> voids;
  for (int c = 0; c < tissue.num_cells(); ++c) {
    const auto& cell = tissue.cells[c];
    auto outer = hexagon_outline(f, cell.centre, s);
    if (f.solid) {
      if (cell.cut) outer = clip_to_rect(outer, 0, W, 0, H);
      mb.convex(outer, c);
      continue;
    }
    const auto inner = void_outline(f, cell.centre, s);
    const int first = cell.cut ? 2 : 0, last = cell.cut ? 6 : 8;
    for (int e = first; e < last; ++e)
      mb.band(outer[e], outer[(e + 1) % 8], inner[e], inner[(e + 1) % 8], rows, c);
    voids.push_back(inner);
  }
  const double tol = mb.tol();
  const SegmentIndex membranes(voids, 2 * f.a * s);
  return mb.finish([&](const Vec2& a, const Vec2& b) {
    if (std::abs(a.y()) <= tol && std::abs(b.y()) <= tol) return BoundaryTag::OuterBottom;
    if (membranes.distance(a) <= tol && membranes.distance(b) <= tol && membranes.distance(0.5 * (a + b)) <= tol)
      return BoundaryTag::CellInterface;
    return BoundaryTag::OuterOther;
  });
}

Mesh2D triangulate(const std::vector<Vec2>& poly, double edges_per_unit) {
  if (poly.size() < 3) throw InvalidInput("polygon needs at least three vertices");
  double diam = 0, ymin = poly.front().y();
  for (const auto& p : poly) {
    ymin = std::min(ymin, p.y());
    for (const auto& q : poly) diam = std::max(diam, (p - q).norm());
  }
  MeshBuilder mb(diam, edges_per_unit);
  mb.convex(poly, 0);
  const double tol = mb.tol();
  return mb.finish([&](const Vec2& a, const Vec2& b) {
    return std::abs(a.y() - ymin) <= tol && std::abs(b.y() - ymin) <= tol ? BoundaryTag::OuterBottom
                                                                         : BoundaryTag::OuterOther;
  });
}

std::vector<PeriodicPair> match_periodic_nodes(const Mesh2D& mesh, const std::vector<Vec2>& lattice,
                                               std::vector<int> candidates) {
  if (candidates.empty()) {
    for (const auto& e : mesh.boundary_edges)
      if (e.tag == BoundaryTag::OuterOther) {
        candidates.push_back(e.a);
        candidates.push_back(e.b);
      }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const double tol = mesh.geom_tol();
  PointIndex index(tol);
  for (int id : candidates) index.insert(mesh.nodes[id], id);

  std::vector<Vec2> shifts;
  for (const auto& v : lattice) {
    shifts.push_back(v);
    shifts.push_back(-v);
  }
  std::unordered_map<int, std::vector<std::pair<int, Vec2>>> links;
  for (int id : candidates) {
    auto& out = links[id];
    for (const auto& sh : shifts) {
      const int j = index.find(mesh.nodes[id] + sh, mesh.nodes);
      if (j >= 0 && j != id) out.push_back({j, sh});
    }
    if (out.empty()) {
      std::ostringstream os;
      os << "boundary node " << id << " at (" << mesh.nodes[id].x() << ", " << mesh.nodes[id].y()
         << ") has no periodic partner";
      throw InvalidInput(os.str());
    }
  }

  std::vector<PeriodicPair> pairs;
  std::unordered_map<int, Vec2> offset;
  for (int root : candidates) { // ascending, so each class is rooted at its lowest index
    if (offset.count(root)) continue;
    offset[root] = Vec2::Zero();
    std::vector<int> queue{root};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int cur = queue[q];
      for (const auto& [nb, sh] : links[cur]) {
        if (offset.count(nb)) continue;
        offset[nb] = offset[cur] + sh;
        queue.push_back(nb);
        pairs.push_back({root, nb, offset[nb]});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const PeriodicPair& x, const PeriodicPair& y) { return x.slave < y.slave; });
  return pairs;
}

Mesh2D build_rect_mesh(double width, double height, double edge) {
  if (!(width > 0) || !(height > 0) || !(edge > 0)) throw InvalidInput("rectangle mesh needs positive sizes");
  const int nx = std::max(1, static_cast<int>(std::ceil(width / edge - kRoundGuard)));
  const int ny = std::max(1, static_cast<int>(std::ceil(height / edge - kRoundGuard)));
  Mesh2D m;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.nodes.emplace_back(width * i / nx, height * j / ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (nx % 2 == 1 && i == nx / 2) {
        // middle column of an odd grid: split into four to keep mirror symmetry
        const int mid = m.num_nodes();
        m.nodes.push_back(0.25 * (m.nodes[a] + m.nodes[b] + m.nodes[c] + m.nodes[d]));
        for (auto [p, q] : {std::pair{a, b}, {b, c}, {c, d}, {d, a}}) m.triangles.push_back({p, q, mid});
        continue;
      }
      if (2 * i < nx) {
        m.triangles.push_back({a, b, c});
        m.triangles.push_back({a, c, d});
      } else {
        m.triangles.push_back({a, b, d});
        m.triangles.push_back({b, c, d});
      }
    }
  m.region.assign(m.triangles.size(), 0);
  for (int i = 0; i < nx; ++i) {
    m.boundary_edges.push_back({id(i, 0), id(i + 1, 0), BoundaryTag::OuterBottom, -1});
    m.boundary_edges.push_back({id(i, ny), id(i + 1, ny), BoundaryTag::OuterOther, -1});
  }
  for (int j = 0; j < ny; ++j) {
    m.boundary_edges.push_back({id(0, j), id(0, j + 1), BoundaryTag::OuterOther, -1});
    m.boundary_edges.push_back({id(nx, j), id(nx, j + 1), BoundaryTag::OuterOther, -1});
  }
  attach_boundary_owners(m);
  return m;
}

} // namespace twoscale
