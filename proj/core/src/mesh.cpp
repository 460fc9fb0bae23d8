#include "twoscale/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace twoscale {

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::OuterBottom: return "OUTER_BOTTOM";
    case BoundaryTag::OuterOther: return "OUTER_OTHER";
    case BoundaryTag::CellInterface: return "CELL_INTERFACE";
  }
  return "?";
}

BoundaryTag boundary_tag_from_string(const std::string& s) {
  if (s == "OUTER_BOTTOM") return BoundaryTag::OuterBottom;
  if (s == "OUTER_OTHER") return BoundaryTag::OuterOther;
  if (s == "CELL_INTERFACE") return BoundaryTag::CellInterface;
  throw InvalidInput("unknown boundary tag '" + s + "'");
}

int Mesh2D::num_regions() const {
  return region.empty() ? 0 : *std::max_element(region.begin(), region.end()) + 1;
}

double Mesh2D::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const Vec2 e1 = nodes[tri[1]] - nodes[tri[0]];
  const Vec2 e2 = nodes[tri[2]] - nodes[tri[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

Vec2 Mesh2D::centroid(int t) const {
  const auto& tri = triangles[t];
  return (nodes[tri[0]] + nodes[tri[1]] + nodes[tri[2]]) / 3.0;
}

double Mesh2D::total_area() const {
  double a = 0.0;
  for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
  return a;
}

double Mesh2D::diameter() const {
  if (nodes.empty()) return 0.0;
  Vec2 lo = nodes.front(), hi = nodes.front();
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

Vec2 Mesh2D::outward_normal(const BoundaryEdge& e) const {
  const Vec2 d = nodes[e.b] - nodes[e.a];
  return Vec2(d.y(), -d.x()).normalized();
}

double Mesh2D::edge_length(const BoundaryEdge& e) const { return (nodes[e.b] - nodes[e.a]).norm(); }

MeshAudit audit(const Mesh2D& mesh) {
  MeshAudit r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.problems.push_back(std::move(msg));
  };
  const double area_eps = 1e-12 * mesh.total_area();
  const double tol = mesh.geom_tol();
  const int n = mesh.num_nodes();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangles[t])
      if (v < 0 || v >= n) fail("triangle " + std::to_string(t) + " references a missing node");
    if (!(mesh.triangle_area(t) > area_eps)) fail("triangle " + std::to_string(t) + " is degenerate or inverted");
  }
  if (mesh.region.size() != mesh.triangles.size()) fail("region tags do not cover every triangle");
  for (int g : mesh.region)
    if (g < 0) {
      fail("negative region tag");
      break;
    }
  for (const auto& e : mesh.boundary_edges)
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) fail("boundary edge references a missing node");
  for (const auto& p : mesh.periodic_pairs) {
    if (p.master < 0 || p.master >= n || p.slave < 0 || p.slave >= n) {
      fail("periodic pair references a missing node");
      continue;
    }
    const double gap = (mesh.nodes[p.slave] - mesh.nodes[p.master] - p.shift).norm();
    if (gap > tol) fail("periodic pair " + std::to_string(p.master) + "->" + std::to_string(p.slave) + " off by " + std::to_string(gap));
  }
  return r;
}

void attach_boundary_owners(Mesh2D& mesh) {
  std::map<std::pair<int, int>, std::pair<int, int>> directed; // sorted key -> (triangle, a)
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      directed[{std::min(a, b), std::max(a, b)}] = {t, a};
    }
  }
  for (auto& e : mesh.boundary_edges) {
    const auto it = directed.find({std::min(e.a, e.b), std::max(e.a, e.b)});
    if (it == directed.end()) throw InvalidInput("boundary edge is not an edge of any triangle");
    const auto [t, a] = it->second;
    if (a != e.a) std::swap(e.a, e.b);
    e.triangle = t;
  }
}

void write_mesh(std::ostream& os, const Mesh2D& mesh) {
  os << "mesh2d v1\n";
  os << std::setprecision(17);
  os << "nodes " << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) os << p.x() << " " << p.y() << "\n";
  os << "triangles " << mesh.triangles.size() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    os << tri[0] << " " << tri[1] << " " << tri[2] << " " << mesh.region[t] << "\n";
  }
  os << "bedges " << mesh.boundary_edges.size() << "\n";
  for (const auto& e : mesh.boundary_edges) os << e.a << " " << e.b << " " << to_string(e.tag) << "\n";
  os << "periodic " << mesh.periodic_pairs.size() << "\n";
  for (const auto& p : mesh.periodic_pairs)
    os << p.master << " " << p.slave << " " << p.shift.x() << " " << p.shift.y() << "\n";
}

namespace {

std::size_t expect_section(std::istream& is, const std::string& name) {
  std::string word;
  long long count = -1;
  if (!(is >> word >> count) || word != name || count < 0)
    throw InvalidInput("mesh file: expected section '" + name + " <count>'");
  return static_cast<std::size_t>(count);
}

} // namespace

Mesh2D read_mesh(std::istream& is) {
  std::string magic, version;
  if (!(is >> magic >> version) || magic != "mesh2d" || version != "v1")
    throw InvalidInput("mesh file: missing 'mesh2d v1' header");
  Mesh2D m;
  m.nodes.resize(expect_section(is, "nodes"));
  for (auto& p : m.nodes)
    if (!(is >> p.x() >> p.y())) throw InvalidInput("mesh file: truncated node list");
  const std::size_t nt = expect_section(is, "triangles");
  m.triangles.resize(nt);
  m.region.resize(nt);
  for (std::size_t t = 0; t < nt; ++t)
    if (!(is >> m.triangles[t][0] >> m.triangles[t][1] >> m.triangles[t][2] >> m.region[t]))
      throw InvalidInput("mesh file: truncated triangle list");
  m.boundary_edges.resize(expect_section(is, "bedges"));
  for (auto& e : m.boundary_edges) {
    std::string tag;
    if (!(is >> e.a >> e.b >> tag)) throw InvalidInput("mesh file: truncated boundary edge list");
    e.tag = boundary_tag_from_string(tag);
  }
  m.periodic_pairs.resize(expect_section(is, "periodic"));
  for (auto& p : m.periodic_pairs)
    if (!(is >> p.master >> p.slave >> p.shift.x() >> p.shift.y()))
      throw InvalidInput("mesh file: truncated periodic list");
  attach_boundary_owners(m);
  return m;
}

void write_mesh_file(const std::string& path, const Mesh2D& mesh) {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot open " + path + " for writing");
  write_mesh(os, mesh);
}

Mesh2D read_mesh_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInput("cannot open " + path);
  return read_mesh(is);
}

} // namespace twoscale
