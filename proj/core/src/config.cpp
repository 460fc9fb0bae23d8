#include "twoscale/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace twoscale {

namespace {

void flatten(const YAML::Node& node, const std::string& prefix, std::map<std::string, YAML::Node>& out) {
  for (const auto& kv : node) {
    const std::string key = prefix.empty() ? kv.first.as<std::string>() : prefix + "." + kv.first.as<std::string>();
    if (kv.second.IsMap()) {
      flatten(kv.second, key, out);
    } else if (!out.emplace(key, kv.second).second) {
      throw InvalidInput("duplicate config key " + key);
    }
  }
}

double as_double(const std::string& key, const YAML::Node& n) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw InvalidInput("config key " + key + ": expected a number");
  }
}

LinearField as_field(const std::string& key, const YAML::Node& n) {
  if (n.IsSequence()) {
    if (n.size() != 2) throw InvalidInput("config key " + key + ": expected a number or [lo, hi]");
    return {as_double(key, n[0]), as_double(key, n[1])};
  }
  return LinearField(as_double(key, n));
}

int as_int(const std::string& key, const YAML::Node& n) {
  try {
    return n.as<int>();
  } catch (const YAML::Exception&) {
    throw InvalidInput("config key " + key + ": expected an integer");
  }
}

using Setter = std::function<void(SimulationConfig&, const std::string&, const YAML::Node&)>;

const std::map<std::string, Setter>& setters() {
  auto field = [](LinearField ModelParams::*m) {
    return Setter([m](SimulationConfig& c, const std::string& k, const YAML::Node& n) { c.model.*m = as_field(k, n); });
  };
  auto real = [](double ModelParams::*m) {
    return Setter([m](SimulationConfig& c, const std::string& k, const YAML::Node& n) { c.model.*m = as_double(k, n); });
  };
  static const std::map<std::string, Setter> s{
      {"geometry.l1", real(&ModelParams::l1)},
      {"geometry.l2", field(&ModelParams::l2)},
      {"geometry.theta_deg", real(&ModelParams::theta_deg)},
      {"geometry.w", field(&ModelParams::w)},
      {"geometry.cell_scale", real(&ModelParams::cell_scale)},
      {"material.E", field(&ModelParams::young)},
      {"material.nu", field(&ModelParams::poisson)},
      {"pressure.P1", field(&ModelParams::pressure)},
      {"growth.law",
       [](SimulationConfig& c, const std::string& k, const YAML::Node& n) {
         const std::string v = n.as<std::string>();
         if (v == "stress") c.model.law = GrowthLaw::Stress;
         else if (v == "strain") c.model.law = GrowthLaw::Strain;
         else throw InvalidInput("config key " + k + ": expected stress or strain, got " + v);
       }},
      {"growth.eta", field(&ModelParams::eta)},
      {"growth.tau", field(&ModelParams::tau)},
      {"growth.M", real(&ModelParams::clamp_bound)},
      {"traction",
       [](SimulationConfig& c, const std::string& k, const YAML::Node& n) {
         if (!n.IsSequence() || n.size() != 2) throw InvalidInput("config key " + k + ": expected [f1, f2]");
         c.model.traction = Vec2(as_double(k, n[0]), as_double(k, n[1]));
       }},
      {"mesh.edges_per_wall", real(&ModelParams::edges_per_wall)},
      {"mesh.fine_edge_len", real(&ModelParams::fine_edge)},
      {"mesh.coarse_edge_len", real(&ModelParams::coarse_edge)},
      {"tissue.Nx", [](SimulationConfig& c, const std::string& k, const YAML::Node& n) { c.model.Nx = as_int(k, n); }},
      {"time.dt", real(&ModelParams::dt)},
      {"time.t_max", real(&ModelParams::t_max)},
      {"output.dir", [](SimulationConfig& c, const std::string&, const YAML::Node& n) { c.out_dir = n.as<std::string>(); }},
      {"output.snapshots",
       [](SimulationConfig& c, const std::string& k, const YAML::Node& n) {
         if (!n.IsSequence()) throw InvalidInput("config key " + k + ": expected a list of times");
         c.snapshots.clear();
         for (const auto& v : n) c.snapshots.push_back(as_double(k, v));
       }},
  };
  return s;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string field_text(const LinearField& f) {
  return f.uniform() ? number(f.lo) : "[" + number(f.lo) + ", " + number(f.hi) + "]";
}

} // namespace

SimulationConfig parse_config_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw InvalidInput(std::string("config is not valid YAML: ") + e.what());
  }
  SimulationConfig cfg;
  if (root.IsNull()) {
    cfg.model.validate();
    return cfg;
  }
  if (!root.IsMap()) throw InvalidInput("config must be a map of keys");
  std::map<std::string, YAML::Node> flat;
  flatten(root, "", flat);
  for (const auto& [key, node] : flat) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw InvalidInput("unknown config key " + key);
    it->second(cfg, key, node);
  }
  cfg.model.validate();
  for (double t : cfg.snapshots)
    if (t < 0 || t > cfg.model.t_max) throw InvalidInput("invalid output.snapshots: times must lie in [0, time.t_max]");
  return cfg;
}

SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string emit_config(const SimulationConfig& c) {
  const ModelParams& m = c.model;
  std::ostringstream os;
  os << "geometry:\n"
     << "  l1: " << number(m.l1) << "\n"
     << "  l2: " << field_text(m.l2) << "\n"
     << "  theta_deg: " << number(m.theta_deg) << "\n"
     << "  w: " << field_text(m.w) << "\n"
     << "  cell_scale: " << number(m.cell_scale) << "\n"
     << "material:\n"
     << "  E: " << field_text(m.young) << "\n"
     << "  nu: " << field_text(m.poisson) << "\n"
     << "pressure:\n"
     << "  P1: " << field_text(m.pressure) << "\n"
     << "growth:\n"
     << "  law: " << to_string(m.law) << "\n"
     << "  eta: " << field_text(m.eta) << "\n"
     << "  tau: " << field_text(m.tau) << "\n"
     << "  M: " << number(m.clamp_bound) << "\n"
     << "traction: [" << number(m.traction.x()) << ", " << number(m.traction.y()) << "]\n"
     << "mesh:\n"
     << "  edges_per_wall: " << number(m.edges_per_wall) << "\n"
     << "  fine_edge_len: " << number(m.fine_edge) << "\n"
     << "  coarse_edge_len: " << number(m.coarse_edge) << "\n"
     << "tissue:\n"
     << "  Nx: " << m.Nx << "\n"
     << "time:\n"
     << "  dt: " << number(m.dt) << "\n"
     << "  t_max: " << number(m.t_max) << "\n"
     << "output:\n"
     << "  dir: " << YAML::Dump(YAML::Node(c.out_dir)) << "\n"
     << "  snapshots: [";
  for (std::size_t i = 0; i < c.snapshots.size(); ++i) os << (i ? ", " : "") << number(c.snapshots[i]);
  os << "]\n";
  return os.str();
}

std::string config_hash(const SimulationConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : emit_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool same_config(const SimulationConfig& a, const SimulationConfig& b) { return emit_config(a) == emit_config(b); }

} // namespace twoscale
