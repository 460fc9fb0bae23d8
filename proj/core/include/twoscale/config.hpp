#pragma once

#include "twoscale/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace twoscale {

// Run configuration read from YAML. Keys may be nested maps or dotted
// (`material: {E: 1}` and `material.E: 1` are the same key). Fields that may
// vary across the tissue take a number or a two-element list [at x1 = 0,
// at x1 = width].
//
//   geometry.{l1, l2, theta_deg, w, cell_scale}   l2, w: field
//   material.{E, nu}                              fields
//   pressure.P1                                   field
//   growth.{law, eta, tau, M}                     law: stress | strain; eta, tau: fields
//   traction                                      [f1, f2] on the free outer boundary
//   mesh.{edges_per_wall, fine_edge_len, coarse_edge_len}
//   tissue.Nx
//   time.{dt, t_max}
//   output.{dir, snapshots}                       snapshots: list of times
//
// Missing keys keep the reference values of ModelParams.
struct SimulationConfig {
  ModelParams model;
  std::string out_dir = "out";
  std::vector<double> snapshots;
};

// Throws InvalidInput naming the key for unknown keys, malformed values and
// violated constraints.
SimulationConfig parse_config_text(const std::string& text);
SimulationConfig parse_config(const std::string& path);

// Every key, with doubles written to round-trip exactly.
std::string emit_config(const SimulationConfig& cfg);

// FNV-1a 64 of emit_config, as 16 hex digits.
std::string config_hash(const SimulationConfig& cfg);

bool same_config(const SimulationConfig& a, const SimulationConfig& b);

} // namespace twoscale
