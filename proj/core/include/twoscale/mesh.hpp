#pragma once

#include "twoscale/types.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace twoscale {

enum class BoundaryTag { OuterBottom, OuterOther, CellInterface };

const char* to_string(BoundaryTag tag);
BoundaryTag boundary_tag_from_string(const std::string& s);

// Oriented so that the owning triangle lies to the left of a -> b; the
// outward normal is therefore (dy, -dx) / length.
struct BoundaryEdge {
  int a = -1, b = -1;
  BoundaryTag tag = BoundaryTag::OuterOther;
  int triangle = -1;
};

// slave = master + shift
struct PeriodicPair {
  int master = -1, slave = -1;
  Vec2 shift = Vec2::Zero();
};

struct Mesh2D {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> region;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<PeriodicPair> periodic_pairs;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_regions() const;

  double triangle_area(int t) const;
  Vec2 centroid(int t) const;
  double total_area() const;
  double diameter() const;
  // geom_tol = 1e-9 * diameter, area_eps = 1e-12 * total area
  double geom_tol() const { return 1e-9 * diameter(); }

  Vec2 outward_normal(const BoundaryEdge& e) const;
  double edge_length(const BoundaryEdge& e) const;
};

struct MeshAudit {
  bool ok = true;
  std::vector<std::string> problems;
};

// Positive areas, periodic coordinate check, region tags for every triangle,
// boundary edges referencing valid nodes.
MeshAudit audit(const Mesh2D& mesh);

// Recomputes BoundaryEdge::triangle and orientation from connectivity.
void attach_boundary_owners(Mesh2D& mesh);

void write_mesh(std::ostream& os, const Mesh2D& mesh);
Mesh2D read_mesh(std::istream& is);
void write_mesh_file(const std::string& path, const Mesh2D& mesh);
Mesh2D read_mesh_file(const std::string& path);

} // namespace twoscale
