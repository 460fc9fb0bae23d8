#pragma once

#include "twoscale/fem.hpp"
#include "twoscale/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace twoscale {

// CSV with a `# config_hash=<hash>` comment line, then the header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  CsvTable& row(std::vector<std::string> cells);
  CsvTable& row(const std::vector<double>& values);
  void write(const std::string& path, const std::string& config_hash) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double v);

CsvTable trajectory_table(const std::vector<TrajectoryRow>& rows);
// One row per segment: index, start point, end point.
CsvTable outline_table(const Outline& o);

struct VtkField {
  std::string name;
  std::vector<double> values; // components interleaved
  int components = 1;
};

// Legacy ASCII unstructured grid of triangles. Point fields have one entry
// per mesh node, cell fields one per triangle.
void write_vtk(const std::string& path, const Mesh2D& mesh, const std::vector<VtkField>& point_fields,
               const std::vector<VtkField>& cell_fields);

// Displacement (nodal) plus Fg components and det Fg as given per node or
// per element.
VtkField displacement_field(const Mesh2D& mesh, const Vector& u);
std::vector<VtkField> tensor_fields(const std::string& name, const std::vector<Mat2>& f);

// Creates the directory and its parents.
void ensure_directory(const std::string& dir);

} // namespace twoscale
