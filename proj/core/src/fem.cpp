#include "twoscale/fem.hpp"
#include "twoscale/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace twoscale {

const std::vector<QuadPoint>& triangle_rule(int degree) {
  static const std::vector<QuadPoint> deg2{
      {{2.0 / 3, 1.0 / 6, 1.0 / 6}, 1.0 / 3},
      {{1.0 / 6, 2.0 / 3, 1.0 / 6}, 1.0 / 3},
      {{1.0 / 6, 1.0 / 6, 2.0 / 3}, 1.0 / 3}};
  // Strang-Fix 6 point rule, exact for degree 4
  static const std::vector<QuadPoint> deg4 = [] {
    const double a = 0.445948490915965, wa = 0.223381589678011;
    const double b = 0.091576213509771, wb = 0.109951743655322;
    std::vector<QuadPoint> r;
    r.push_back({{1 - 2 * a, a, a}, wa});
    r.push_back({{a, 1 - 2 * a, a}, wa});
    r.push_back({{a, a, 1 - 2 * a}, wa});
    r.push_back({{1 - 2 * b, b, b}, wb});
    r.push_back({{b, 1 - 2 * b, b}, wb});
    r.push_back({{b, b, 1 - 2 * b}, wb});
    return r;
  }();
  return degree <= 2 ? deg2 : deg4;
}

const std::vector<std::pair<double, double>>& edge_rule() {
  static const std::vector<std::pair<double, double>> r = [] {
    const double s = std::sqrt(0.6);
    return std::vector<std::pair<double, double>>{
        {0.5 * (1 - s), 5.0 / 18}, {0.5, 8.0 / 18}, {0.5 * (1 + s), 5.0 / 18}};
  }();
  return r;
}

FESpace::FESpace(const Mesh2D& mesh, int order) : mesh_(&mesh), order_(order) {
  if (order != 1 && order != 2) throw InvalidInput("finite element order must be 1 or 2");
  points_ = mesh.nodes;
  elem_.resize(mesh.triangles.size());
  std::map<std::pair<int, int>, int> mids;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    auto& en = elem_[t];
    en.fill(-1);
    for (int k = 0; k < 3; ++k) en[k] = tri[k];
    if (order == 1) continue;
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = mids.find(key);
      if (it == mids.end()) {
        it = mids.emplace(key, static_cast<int>(points_.size())).first;
        points_.push_back(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
      }
      en[3 + k] = it->second;
    }
  }
  edge_mid_.assign(mids.begin(), mids.end());
}

int FESpace::mid_node(int a, int b) const {
  const auto key = std::make_pair(std::min(a, b), std::max(a, b));
  const auto it = std::lower_bound(edge_mid_.begin(), edge_mid_.end(), key,
                                   [](const auto& x, const auto& k) { return x.first < k; });
  if (it == edge_mid_.end() || it->first != key) throw InvalidInput("edge is not part of the mesh");
  return it->second;
}

std::vector<int> FESpace::edge_nodes(const BoundaryEdge& e) const {
  if (order_ == 1) return {e.a, e.b};
  return {e.a, mid_node(e.a, e.b), e.b};
}

std::vector<PeriodicPair> FESpace::periodic_pairs() const {
  std::vector<PeriodicPair> out = mesh_->periodic_pairs;
  if (order_ == 1 || out.empty()) return out;
  // Edge nodes pair up when both endpoints are translates under one shift.
  std::map<int, std::pair<int, Vec2>> master_of; // node -> (master, offset)
  for (const auto& p : out) master_of[p.slave] = {p.master, p.shift};
  auto cls = [&](int n) -> std::pair<int, Vec2> {
    const auto it = master_of.find(n);
    return it == master_of.end() ? std::make_pair(n, Vec2(Vec2::Zero())) : it->second;
  };
  const double tol = mesh_->geom_tol();
  std::map<std::pair<int, int>, std::vector<int>> groups; // (class a, class b) -> edge indices
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : mesh_->boundary_edges) {
    if (e.tag != BoundaryTag::OuterOther) continue;
    int ca = cls(e.a).first, cb = cls(e.b).first;
    int a = e.a, b = e.b;
    if (ca > cb) {
      std::swap(ca, cb);
      std::swap(a, b);
    }
    groups[{ca, cb}].push_back(static_cast<int>(edges.size()));
    edges.push_back({a, b});
  }
  for (const auto& [key, members] : groups) {
    std::vector<bool> used(members.size(), false);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (used[i]) continue;
      const auto [a0, b0] = edges[members[i]];
      const int m0 = mid_node(a0, b0);
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (used[j]) continue;
        const auto [a1, b1] = edges[members[j]];
        const Vec2 sa = mesh_->nodes[a1] - mesh_->nodes[a0];
        const Vec2 sb = mesh_->nodes[b1] - mesh_->nodes[b0];
        if ((sa - sb).norm() > tol) continue;
        const int m1 = mid_node(a1, b1);
        used[j] = true;
        out.push_back({m0, m1, points_[m1] - points_[m0]});
      }
    }
  }
  return out;
}

void FESpace::shape(int t, const std::array<double, 3>& l, double* n, Vec2* grad) const {
  const auto& tri = mesh_->triangles[t];
  const Vec2 &p0 = mesh_->nodes[tri[0]], &p1 = mesh_->nodes[tri[1]], &p2 = mesh_->nodes[tri[2]];
  const double det = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  const std::array<Vec2, 3> gl{Vec2(p1.y() - p2.y(), p2.x() - p1.x()) / det,
                               Vec2(p2.y() - p0.y(), p0.x() - p2.x()) / det,
                               Vec2(p0.y() - p1.y(), p1.x() - p0.x()) / det};
  if (order_ == 1) {
    for (int k = 0; k < 3; ++k) {
      if (n) n[k] = l[k];
      if (grad) grad[k] = gl[k];
    }
    return;
  }
  for (int k = 0; k < 3; ++k) {
    if (n) n[k] = l[k] * (2 * l[k] - 1);
    if (grad) grad[k] = (4 * l[k] - 1) * gl[k];
    const int i = k, j = (k + 1) % 3;
    if (n) n[3 + k] = 4 * l[i] * l[j];
    if (grad) grad[3 + k] = 4 * (l[j] * gl[i] + l[i] * gl[j]);
  }
}

Vec2 FESpace::map_point(int t, const std::array<double, 3>& l) const {
  const auto& tri = mesh_->triangles[t];
  return l[0] * mesh_->nodes[tri[0]] + l[1] * mesh_->nodes[tri[1]] + l[2] * mesh_->nodes[tri[2]];
}

ElementCoefficients ElementCoefficients::uniform(int n, const ElasticTensor2D& e, const Mat2& fg) {
  return {std::vector<ElasticTensor2D>(n, e), std::vector<Mat2>(n, fg)};
}

namespace {

int quad_degree(const FESpace& s) { return s.order() == 1 ? 2 : 4; }

InverseDet checked_growth(const Mat2& fg, int t) {
  const InverseDet id = inverse_and_det(fg);
  if (id.det < 1 - 1e-10) {
    std::ostringstream os;
    os << "element " << t << ": det Fg = " << id.det << " < 1";
    throw InvalidInput(os.str());
  }
  return id;
}

} // namespace

SparseMatrix assemble_stiffness(const FESpace& space, const ElementCoefficients& coef) {
  const Mesh2D& mesh = space.mesh();
  const int nt = mesh.num_triangles(), nl = space.local_size();
  if (static_cast<int>(coef.tensor.size()) != nt || static_cast<int>(coef.fg.size()) != nt)
    throw InvalidInput("element coefficients do not match the mesh");
  const auto& rule = triangle_rule(quad_degree(space));
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(nt) * 4 * nl * nl);
  std::array<Vec2, 6> g;
  Eigen::MatrixXd b(3, 2 * nl), ke(2 * nl, 2 * nl);
  for (int t = 0; t < nt; ++t) {
    const InverseDet id = checked_growth(coef.fg[t], t);
    const Mat2 finv_t = id.inverse.transpose();
    const Eigen::Matrix3d d = coef.tensor[t].voigt();
    const double area = mesh.triangle_area(t);
    ke.setZero();
    for (const auto& q : rule) {
      space.shape(t, q.bary, nullptr, g.data());
      b.setZero();
      for (int a = 0; a < nl; ++a) {
        const Vec2 ga = finv_t * g[a];
        b(0, 2 * a) = ga.x();
        b(2, 2 * a) = ga.y();
        b(1, 2 * a + 1) = ga.y();
        b(2, 2 * a + 1) = ga.x();
      }
      ke.noalias() += (q.weight * area * id.det) * b.transpose() * d * b;
    }
    const auto& en = space.element_nodes(t);
    for (int i = 0; i < 2 * nl; ++i)
      for (int j = 0; j < 2 * nl; ++j) trip.emplace_back(2 * en[i / 2] + i % 2, 2 * en[j / 2] + j % 2, ke(i, j));
  }
  SparseMatrix k(space.num_dofs(), space.num_dofs());
  k.setFromTriplets(trip.begin(), trip.end());
  return k;
}

void add_stress_load(Vector& f, const FESpace& space, const std::vector<Mat2>& fg, const StressDensity& sigma) {
  const Mesh2D& mesh = space.mesh();
  const int nl = space.local_size();
  const auto& rule = triangle_rule(quad_degree(space));
  std::array<Vec2, 6> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const InverseDet id = checked_growth(fg[t], t);
    const Mat2 finv_t = id.inverse.transpose();
    const double area = mesh.triangle_area(t);
    const auto& en = space.element_nodes(t);
    for (const auto& q : rule) {
      space.shape(t, q.bary, nullptr, g.data());
      const Mat2 s = sigma(t, space.map_point(t, q.bary));
      const double wj = q.weight * area * id.det;
      for (int a = 0; a < nl; ++a) {
        const Vec2 ga = finv_t * g[a];
        // sigma : (e_c ga^T) for symmetric sigma
        f[2 * en[a]] += wj * (s(0, 0) * ga.x() + s(0, 1) * ga.y());
        f[2 * en[a] + 1] += wj * (s(1, 0) * ga.x() + s(1, 1) * ga.y());
      }
    }
  }
}

void add_body_force(Vector& f, const FESpace& space, const ForceDensity& b) {
  const Mesh2D& mesh = space.mesh();
  const int nl = space.local_size();
  const auto& rule = triangle_rule(quad_degree(space));
  std::array<double, 6> n;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.triangle_area(t);
    const auto& en = space.element_nodes(t);
    for (const auto& q : rule) {
      space.shape(t, q.bary, n.data(), nullptr);
      const Vec2 v = b(t, space.map_point(t, q.bary)) * (q.weight * area);
      for (int a = 0; a < nl; ++a) {
        f[2 * en[a]] += n[a] * v.x();
        f[2 * en[a] + 1] += n[a] * v.y();
      }
    }
  }
}

void add_edge_load(Vector& f, const FESpace& space, const std::function<bool(const BoundaryEdge&)>& select,
                   const EdgeDensity& t) {
  const Mesh2D& mesh = space.mesh();
  for (const auto& e : mesh.boundary_edges) {
    if (!select(e)) continue;
    const auto nodes = space.edge_nodes(e);
    const Vec2 &pa = mesh.nodes[e.a], &pb = mesh.nodes[e.b];
    const double len = (pb - pa).norm();
    for (const auto& [s, w] : edge_rule()) {
      const Vec2 x = pa + s * (pb - pa);
      const Vec2 v = t(e, x) * (w * len);
      std::array<double, 3> n;
      if (space.order() == 1) {
        n = {1 - s, s, 0};
      } else {
        n = {(1 - s) * (1 - 2 * s), 4 * s * (1 - s), s * (2 * s - 1)};
      }
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        f[2 * nodes[a]] += n[a] * v.x();
        f[2 * nodes[a] + 1] += n[a] * v.y();
      }
    }
  }
}

Vector mean_functional(const FESpace& space, int comp) {
  Vector c = Vector::Zero(space.num_dofs());
  add_body_force(c, space, [comp](int, const Vec2&) { return comp == 0 ? Vec2(1, 0) : Vec2(0, 1); });
  return c;
}

Vector rotation_functional(const FESpace& space) {
  const Mesh2D& mesh = space.mesh();
  Vector c = Vector::Zero(space.num_dofs());
  const auto& rule = triangle_rule(quad_degree(space));
  std::array<Vec2, 6> g;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.triangle_area(t);
    const auto& en = space.element_nodes(t);
    for (const auto& q : rule) {
      space.shape(t, q.bary, nullptr, g.data());
      for (int a = 0; a < space.local_size(); ++a) {
        c[2 * en[a] + 1] += q.weight * area * g[a].x();
        c[2 * en[a]] -= q.weight * area * g[a].y();
      }
    }
  }
  return c;
}

Vector translation_mode(const FESpace& space, int comp) {
  Vector v = Vector::Zero(space.num_dofs());
  for (int k = 0; k < space.num_scalar_nodes(); ++k) v[2 * k + comp] = 1;
  return v;
}

Vector rotation_mode(const FESpace& space) {
  Vector v(space.num_dofs());
  for (int k = 0; k < space.num_scalar_nodes(); ++k) {
    v[2 * k] = -space.points()[k].y();
    v[2 * k + 1] = space.points()[k].x();
  }
  return v;
}

Mat2 gradient_at(const FESpace& space, const Vector& u, int t, const std::array<double, 3>& bary) {
  std::array<Vec2, 6> g;
  space.shape(t, bary, nullptr, g.data());
  const auto& en = space.element_nodes(t);
  Mat2 gu = Mat2::Zero();
  for (int a = 0; a < space.local_size(); ++a) {
    gu.row(0) += u[2 * en[a]] * g[a].transpose();
    gu.row(1) += u[2 * en[a] + 1] * g[a].transpose();
  }
  return gu;
}

Vec2 value_at(const FESpace& space, const Vector& u, int t, const std::array<double, 3>& bary) {
  std::array<double, 6> n;
  space.shape(t, bary, n.data(), nullptr);
  const auto& en = space.element_nodes(t);
  Vec2 v = Vec2::Zero();
  for (int a = 0; a < space.local_size(); ++a) v += n[a] * Vec2(u[2 * en[a]], u[2 * en[a] + 1]);
  return v;
}

Mat2 element_gradient_integral(const FESpace& space, const Vector& u, int t) {
  const double area = space.mesh().triangle_area(t);
  Mat2 sum = Mat2::Zero();
  for (const auto& q : triangle_rule(quad_degree(space))) sum += q.weight * gradient_at(space, u, t, q.bary);
  return area * sum;
}

std::vector<StrainStress> evaluate_strain_stress(const FESpace& space, const Vector& u, const ElementCoefficients& coef) {
  const Mesh2D& mesh = space.mesh();
  std::vector<StrainStress> out(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Mat2 finv = inverse_and_det(coef.fg[t]).inverse;
    const Mat2 mean_grad = element_gradient_integral(space, u, t) / mesh.triangle_area(t);
    const Mat2 eps = sym(mean_grad * finv) + sym(finv) - Mat2::Identity();
    out[t] = {eps, contract(coef.tensor[t], eps)};
  }
  return out;
}

void write_coo(std::ostream& os, const SparseMatrix& m) {
  os.precision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) os << it.row() << " " << it.col() << " " << it.value() << "\n";
}

} // namespace twoscale
