#include "twoscale/growth.hpp"

#include <algorithm>
#include <cmath>

namespace twoscale {

Mat2 positive_part(const Mat2& v) {
  const double a = v(0, 0), c = v(1, 1);
  const double b = 0.5 * (v(0, 1) + v(1, 0));
  const double m = 0.5 * (a + c);
  const double r = std::hypot(0.5 * (a - c), b);
  const double hi = m + r, lo = m - r;

  Mat2 s;
  s << a, b, b, c;
  if (r == 0.0) return std::max(m, 0.0) * Mat2::Identity();
  if (lo >= 0.0) return s;
  if (hi <= 0.0) return Mat2::Zero();
  // mixed signs: only the upper eigenpair survives, and r > 0 here
  const Mat2 proj = (s - lo * Mat2::Identity()) / (2.0 * r);
  return hi * proj;
}

Mat2 clamp(const Mat2& g, double m) { return g.cwiseMax(-m).cwiseMin(m); }

Mat2 growth_rate(const Mat2& avg, const GrowthParams& p) {
  return clamp(p.eta * positive_part(avg - p.tau * Mat2::Identity()), p.clamp_bound);
}

Mat2 euler_step(const Mat2& fg, const Mat2& g, double dt, StepReport* report) {
  const Mat2 next = (Mat2::Identity() + dt * g) * fg;
  if (report) {
    report->det_decreased = next.determinant() < fg.determinant();
    report->large_step = (dt * g).norm() > 0.5;
  }
  return next;
}

InverseDet inverse_and_det(const Mat2& f) {
  const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
  if (std::abs(det) < 1e-14) throw NumericalFailure("growth tensor is singular");
  Mat2 inv;
  inv << f(1, 1), -f(0, 1), -f(1, 0), f(0, 0);
  return {inv / det, det};
}

} // namespace twoscale
