#pragma once

#include "twoscale/mesh.hpp"

#include <array>
#include <vector>

namespace twoscale {

// Honeycomb cell: vertical walls of length l1, oblique walls of length l2
// inclined by theta from the horizontal. theta = 30 with l1 = l2 is the
// regular hexagon. Walls are drawn around the wall centreline; the void is
// the inward mitred offset of the centreline hexagon whose oblique sides
// have length l2 - w, so the void closes exactly at w = l2 for any theta.
struct CellGeometry {
  double l1 = 1.0;
  double l2 = 1.0;
  double theta_deg = 30.0;
  double w = 0.05;
};

struct HexagonFrame {
  double a = 0;      // half width, l2 cos(theta)
  double b = 0;      // rise of an oblique wall, l2 sin(theta)
  double half_l1 = 0;
  double top = 0;    // half height, l1/2 + b
  double h = 0;      // row spacing of the lattice, l1 + b
  double offset = 0; // perpendicular distance from centreline to void
  bool solid = false;
};

// Throws InvalidInput for infeasible input (including w > l2 and a void
// whose vertical sides would vanish). w == l2 gives a solid cell.
HexagonFrame hexagon_frame(const CellGeometry& g);

// Centreline hexagon, CCW, 8 vertices starting at the bottom apex; the
// vertical sides are split at mid-height (indices 2 and 6).
std::vector<Vec2> hexagon_outline(const HexagonFrame& f, const Vec2& centre, double scale);
// Void polygon with the same vertex layout; empty for solid cells.
std::vector<Vec2> void_outline(const HexagonFrame& f, const Vec2& centre, double scale);

// Lattice translations (2a, 0), (a, h), (-a, h) of the cell tiling.
std::array<Vec2, 3> lattice_vectors(const HexagonFrame& f, double scale = 1.0);

double polygon_area(const std::vector<Vec2>& poly);

// Period cell Y is the centreline hexagon itself (the Wigner-Seitz cell of
// the lattice); opposite sides are translates under lattice_vectors.
struct UnitCellDomain {
  CellGeometry geom;
  HexagonFrame frame;
  std::vector<Vec2> outer; // boundary of Y
  std::vector<Vec2> inner; // Gamma, empty for a solid cell
  double area_cell = 0;    // |Y|
  double area_wall = 0;    // |Y_w|
  double wall_fraction() const { return area_wall / area_cell; }
};

UnitCellDomain build_unit_cell(const CellGeometry& g);

struct TissueLayout {
  int Nx = 16;
  double cell_scale = 4.0; // physical cell size per delta
  CellGeometry geom;
  double delta() const { return 1.0 / Nx; }
  double scale() const { return cell_scale * delta(); }
};

struct TissueCell {
  Vec2 centre;     // lattice anchor, used for per-cell pressure
  bool cut = false; // bottom row, lower half removed
};

// Union of scaled cell wall bands (the translates of Y_w). Even rows hold Nx
// cells, odd rows the Nx - 1 cells between them, so the tissue is mirror
// symmetric about x1 = width / 2. The bottom row is cut at mid-height. The
// bounding box is [0, width] x [0, height]; the side and top outlines zigzag
// with the cell walls.
struct TissueDomain {
  TissueLayout layout;
  HexagonFrame frame;
  double width = 0, height = 0;
  std::vector<TissueCell> cells;
  double wall_area = 0; // polygon area of Omega^delta
  double tile_area = 0; // area of the cell tiles (cut cells count half)
  int num_cells() const { return static_cast<int>(cells.size()); }
  double wall_fraction() const { return wall_area / tile_area; }
};

TissueDomain build_tissue(const TissueLayout& layout);

Mesh2D triangulate(const UnitCellDomain& cell, double edges_per_unit);
Mesh2D triangulate(const TissueDomain& tissue, double edges_per_unit);
// Convex polygon, single region; boundary edges tagged OUTER_OTHER except
// edges on the lowest horizontal line, which are OUTER_BOTTOM.
Mesh2D triangulate(const std::vector<Vec2>& convex_polygon, double edges_per_unit);

// Pairs boundary nodes that are translates under +-lattice vectors (and
// their compositions). Candidate nodes default to those on OUTER_OTHER
// edges. Each class of equivalent nodes keeps its lowest index as master.
// Throws InvalidInput if a candidate has no partner.
std::vector<PeriodicPair> match_periodic_nodes(const Mesh2D& mesh, const std::vector<Vec2>& lattice,
                                               std::vector<int> candidates = {});

// Structured grid with ceil(width/edge) x ceil(height/edge) squares split
// into two triangles, diagonals mirrored about the vertical midline.
Mesh2D build_rect_mesh(double width, double height, double target_edge_len);

} // namespace twoscale
