#include "twoscale/fem.hpp"

#include <Eigen/CholmodSupport>
#include <Eigen/SparseLU>

#include <cmath>
#include <memory>
#include <sstream>

namespace twoscale {

struct ConstrainedSolver::Impl {
  int n_full = 0, n_red = 0, n_con = 0;
  double rtol = 1e-10;
  std::vector<int> red;          // full dof -> reduced index, -1 when fixed
  Vector fixed_value;            // full-length, zero where free
  SparseMatrix k_red;            // reduced stiffness
  Vector lift;                   // reduced rhs shift from fixed values
  Eigen::MatrixXd c_red;         // constraint rows (n_con x n_red)
  Vector g;                      // constraint values, fixed values accounted for

  // pinned path
  bool pinned = false;
  Eigen::MatrixXd null_red;      // n_red x m
  Eigen::MatrixXd cn_inv;        // (C N)^-1
  std::vector<int> free_of;      // reduced -> index in K_FF, -1 when pinned
  std::vector<int> free_list;
  std::unique_ptr<Eigen::CholmodDecomposition<SparseMatrix, Eigen::Lower>> chol;

  // bordered path
  SparseMatrix bordered;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix>> lu;

  Vector reduce(const Vector& f) const {
    Vector r = Vector::Zero(n_red);
    for (int d = 0; d < n_full; ++d)
      if (red[d] >= 0) r[red[d]] += f[d];
    return r - lift;
  }

  Vector expand(const Vector& x) const {
    Vector u = fixed_value;
    for (int d = 0; d < n_full; ++d)
      if (red[d] >= 0) u[d] = x[red[d]];
    return u;
  }

  Vector solve_free(const Vector& b) const {
    Vector bf(free_list.size());
    for (std::size_t i = 0; i < free_list.size(); ++i) bf[i] = b[free_list[i]];
    const Vector xf = chol->solve(bf);
    Vector x = Vector::Zero(n_red);
    for (std::size_t i = 0; i < free_list.size(); ++i) x[free_list[i]] = xf[i];
    return x;
  }
};

namespace {

double inf_norm(const SparseMatrix& m) {
  Vector rows = Vector::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) rows[it.row()] += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

} // namespace

ConstrainedSolver::ConstrainedSolver(const SparseMatrix& k, const Constraints& cons, double rtol) : impl_(new Impl) {
  Impl& s = *impl_;
  s.rtol = rtol;
  s.n_full = static_cast<int>(k.rows());
  if (k.rows() != k.cols()) throw InvalidInput("stiffness matrix must be square");

  // periodic elimination, scalar pairs applied to both components
  std::vector<int> master(s.n_full);
  for (int d = 0; d < s.n_full; ++d) master[d] = d;
  for (const auto& p : cons.periodic)
    for (int c = 0; c < 2; ++c) master[2 * p.slave + c] = 2 * p.master + c;
  for (int d = 0; d < s.n_full; ++d)
    if (master[master[d]] != master[d]) throw InvalidInput("periodic master is itself a slave");

  s.fixed_value = Vector::Zero(s.n_full);
  std::vector<bool> is_fixed(s.n_full, false);
  for (const auto& [d, v] : cons.fixed) {
    if (master[d] != d) throw InvalidInput("cannot fix a periodic slave dof");
    is_fixed[d] = true;
    s.fixed_value[d] = v;
  }
  s.red.assign(s.n_full, -1);
  for (int d = 0; d < s.n_full; ++d)
    if (master[d] == d && !is_fixed[d]) s.red[d] = s.n_red++;
  for (int d = 0; d < s.n_full; ++d) {
    if (master[d] != d) {
      s.red[d] = s.red[master[d]];
      s.fixed_value[d] = s.fixed_value[master[d]];
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(k.nonZeros());
  Vector kx = k * s.fixed_value;
  s.lift = Vector::Zero(s.n_red);
  for (int d = 0; d < s.n_full; ++d)
    if (s.red[d] >= 0) s.lift[s.red[d]] += kx[d];
  for (int col = 0; col < k.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(k, col); it; ++it) {
      const int ri = s.red[it.row()], rj = s.red[it.col()];
      if (ri >= 0 && rj >= 0) trip.emplace_back(ri, rj, it.value());
    }
  s.k_red.resize(s.n_red, s.n_red);
  s.k_red.setFromTriplets(trip.begin(), trip.end());

  s.n_con = static_cast<int>(cons.integrals.size());
  s.c_red = Eigen::MatrixXd::Zero(s.n_con, s.n_red);
  s.g.resize(s.n_con);
  for (int i = 0; i < s.n_con; ++i) {
    const auto& ic = cons.integrals[i];
    if (ic.c.size() != s.n_full) throw InvalidInput("integral constraint has the wrong length");
    for (int d = 0; d < s.n_full; ++d)
      if (s.red[d] >= 0) s.c_red(i, s.red[d]) += ic.c[d];
    s.g[i] = ic.value - ic.c.dot(s.fixed_value);
  }

  // pinned path: verified kernel N with C N invertible
  const int m = static_cast<int>(cons.nullspace.size());
  if (m > 0 && m == s.n_con) {
    s.null_red = Eigen::MatrixXd::Zero(s.n_red, m);
    for (int j = 0; j < m; ++j)
      for (int d = 0; d < s.n_full; ++d)
        if (s.red[d] >= 0) s.null_red(s.red[d], j) = cons.nullspace[j][d];
    const double kn = (s.k_red * s.null_red).cwiseAbs().maxCoeff();
    const double scale = inf_norm(s.k_red) * s.null_red.cwiseAbs().maxCoeff();
    const Eigen::MatrixXd cn = s.c_red * s.null_red;
    Eigen::FullPivLU<Eigen::MatrixXd> cn_lu(cn);
    if (kn <= 1e-9 * scale && cn_lu.isInvertible()) {
      s.cn_inv = cn_lu.inverse();
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(s.null_red.transpose());
      std::vector<bool> pin(s.n_red, false);
      for (int j = 0; j < m; ++j) pin[qr.colsPermutation().indices()[j]] = true;
      s.free_of.assign(s.n_red, -1);
      for (int r = 0; r < s.n_red; ++r)
        if (!pin[r]) {
          s.free_of[r] = static_cast<int>(s.free_list.size());
          s.free_list.push_back(r);
        }
      std::vector<Eigen::Triplet<double>> ft;
      for (int col = 0; col < s.k_red.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(s.k_red, col); it; ++it) {
          const int fi = s.free_of[it.row()], fj = s.free_of[it.col()];
          if (fi >= 0 && fj >= 0 && fi >= fj) ft.emplace_back(fi, fj, it.value());
        }
      SparseMatrix kff(s.free_list.size(), s.free_list.size());
      kff.setFromTriplets(ft.begin(), ft.end());
      s.chol = std::make_unique<Eigen::CholmodDecomposition<SparseMatrix, Eigen::Lower>>();
      s.chol->compute(kff);
      s.pinned = s.chol->info() == Eigen::Success;
      if (!s.pinned) s.chol.reset();
    }
  }
  if (!s.pinned) {
    std::vector<Eigen::Triplet<double>> bt;
    bt.reserve(s.k_red.nonZeros() + 2 * static_cast<std::size_t>(s.n_con) * s.n_red);
    for (int col = 0; col < s.k_red.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(s.k_red, col); it; ++it) bt.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < s.n_con; ++i)
      for (int r = 0; r < s.n_red; ++r) {
        const double v = s.c_red(i, r);
        if (v == 0) continue;
        bt.emplace_back(s.n_red + i, r, v);
        bt.emplace_back(r, s.n_red + i, v);
      }
    const int nb = s.n_red + s.n_con;
    s.bordered.resize(nb, nb);
    s.bordered.setFromTriplets(bt.begin(), bt.end());
    s.bordered.makeCompressed();
    s.lu = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
    s.lu->analyzePattern(s.bordered);
    s.lu->factorize(s.bordered);
    if (s.lu->info() != Eigen::Success) {
      throw NumericalFailure("bordered system is singular: constraints do not remove the stiffness kernel (" +
                             s.lu->lastErrorMessage() + ")");
    }
  }
}

ConstrainedSolver::~ConstrainedSolver() { delete impl_; }

int ConstrainedSolver::num_reduced() const { return impl_->n_red; }

Vector ConstrainedSolver::solve(const Vector& f, SolveReport* report) const {
  const Impl& s = *impl_;
  if (f.size() != s.n_full) throw InvalidInput("load vector has the wrong length");
  const Vector fr = s.reduce(f);
  const int nb = s.n_red + s.n_con;
  Vector rhs(nb);
  rhs << fr, s.g;
  const double rhs_norm = rhs.norm();

  Vector x = Vector::Zero(s.n_red), lambda = Vector::Zero(s.n_con);
  auto residual = [&]() {
    Vector r(nb);
    r.head(s.n_red) = s.k_red * x + s.c_red.transpose() * lambda - fr;
    r.tail(s.n_con) = s.c_red * x - s.g;
    return r;
  };

  int refinements = 0;
  Vector r = -rhs;
  if (rhs_norm > 0) {
    for (int pass = 0; pass < 4; ++pass) {
      if (s.pinned) {
        // correction for the bordered system with residual r
        const Vector r1 = -r.head(s.n_red), r2 = -r.tail(s.n_con);
        const Vector dl = s.cn_inv.transpose() * (s.null_red.transpose() * r1);
        Vector dx = s.solve_free(r1 - s.c_red.transpose() * dl);
        dx += s.null_red * (s.cn_inv * (r2 - s.c_red * dx));
        x += dx;
        lambda += dl;
      } else {
        const Vector d = s.lu->solve(-r);
        x += d.head(s.n_red);
        lambda += d.tail(s.n_con);
      }
      r = residual();
      if (pass > 0) ++refinements;
      if (r.norm() <= 0.1 * s.rtol * rhs_norm) break;
    }
  } else {
    r.setZero();
  }
  const double res = r.norm();
  if (report) *report = {res, rhs_norm, s.pinned, refinements};
  if (res > s.rtol * rhs_norm) {
    std::ostringstream os;
    os << "linear solve residual " << res << " exceeds " << s.rtol << " x |rhs| = " << s.rtol * rhs_norm
       << " (" << (s.pinned ? "pinned Cholesky" : "bordered LU") << ", " << s.n_red
       << " unknowns); the system is likely ill-conditioned";
    throw NumericalFailure(os.str());
  }
  return s.expand(x);
}

Vector solve_constrained(const SparseMatrix& k, const Vector& f, const Constraints& cons, double rtol,
                         SolveReport* report) {
  return ConstrainedSolver(k, cons, rtol).solve(f, report);
}

} // namespace twoscale
