#include "twoscale/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace twoscale {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidInput("CSV row width does not match the header");
  rows_.push_back(std::move(cells));
  return *this;
}

CsvTable& CsvTable::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  for (double v : values) cells.push_back(format_number(v));
  return row(std::move(cells));
}

void CsvTable::write(const std::string& path, const std::string& config_hash) const {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot write " + path);
  os << "# config_hash=" << config_hash << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  if (!os) throw InvalidInput("write failed for " + path);
}

CsvTable trajectory_table(const std::vector<TrajectoryRow>& rows) {
  CsvTable t({"t", "mean_growth_rate", "mean_det_fg", "u_l2"});
  for (const auto& r : rows) t.row(std::vector<double>{r.t, r.mean_growth_rate, r.mean_det_fg, r.u_l2});
  return t;
}

CsvTable outline_table(const Outline& o) {
  CsvTable t({"segment", "x1_start", "x2_start", "x1_end", "x2_end"});
  for (std::size_t i = 0; i < o.segments.size(); ++i) {
    const auto& [p, q] = o.segments[i];
    t.row(std::vector<double>{static_cast<double>(i), p.x(), p.y(), q.x(), q.y()});
  }
  return t;
}

namespace {

void write_fields(std::ofstream& os, const std::vector<VtkField>& fields, std::size_t count) {
  for (const auto& f : fields) {
    if (f.values.size() != count * f.components) throw InvalidInput("VTK field " + f.name + " has the wrong size");
    if (f.components == 1) {
      os << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : f.values) os << format_number(v) << "\n";
    } else if (f.components == 2) {
      os << "VECTORS " << f.name << " double\n";
      for (std::size_t i = 0; i < count; ++i)
        os << format_number(f.values[2 * i]) << " " << format_number(f.values[2 * i + 1]) << " 0\n";
    } else {
      throw InvalidInput("VTK field " + f.name + ": only 1 or 2 components supported");
    }
  }
}

} // namespace

void write_vtk(const std::string& path, const Mesh2D& mesh, const std::vector<VtkField>& point_fields,
               const std::vector<VtkField>& cell_fields) {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot write " + path);
  os << "# vtk DataFile Version 3.0\ntwoscale\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& p : mesh.nodes) os << format_number(p.x()) << " " << format_number(p.y()) << " 0\n";
  os << "CELLS " << mesh.num_triangles() << " " << 4 * mesh.num_triangles() << "\n";
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "CELL_TYPES " << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) os << "5\n";
  if (!point_fields.empty()) {
    os << "POINT_DATA " << mesh.num_nodes() << "\n";
    write_fields(os, point_fields, mesh.num_nodes());
  }
  if (!cell_fields.empty()) {
    os << "CELL_DATA " << mesh.num_triangles() << "\n";
    write_fields(os, cell_fields, mesh.num_triangles());
  }
  if (!os) throw InvalidInput("write failed for " + path);
}

VtkField displacement_field(const Mesh2D& mesh, const Vector& u) {
  VtkField f{"displacement", {}, 2};
  f.values.assign(u.data(), u.data() + 2 * mesh.num_nodes());
  return f;
}

std::vector<VtkField> tensor_fields(const std::string& name, const std::vector<Mat2>& m) {
  std::vector<VtkField> out{{name + "_11", {}, 1}, {name + "_12", {}, 1}, {name + "_21", {}, 1},
                            {name + "_22", {}, 1}, {name + "_det", {}, 1}};
  for (const auto& a : m) {
    out[0].values.push_back(a(0, 0));
    out[1].values.push_back(a(0, 1));
    out[2].values.push_back(a(1, 0));
    out[3].values.push_back(a(1, 1));
    out[4].values.push_back(a.determinant());
  }
  return out;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + dir + ": " + ec.message());
}

} // namespace twoscale
