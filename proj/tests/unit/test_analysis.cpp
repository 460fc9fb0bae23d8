#include "twoscale/analysis.hpp"

#include <doctest.h>

#include <cmath>

using namespace twoscale;
using doctest::Approx;

TEST_CASE("relative error") {
  const std::vector<double> A{1, -2, 3}, w{0.5, 1, 2};
  CHECK(relative_error(A, A, w) == 0);
  CHECK(relative_error({2, -4, 6}, A, w) == Approx(1));
  CHECK(relative_error({0, 0, 0}, A, w) == Approx(1));
  const std::vector<double> a{1.1, -1.7, 2.5};
  std::vector<double> ca, cA;
  for (int i = 0; i < 3; ++i) {
    ca.push_back(7 * a[i]);
    cA.push_back(7 * A[i]);
  }
  CHECK(relative_error(ca, cA, w) == Approx(relative_error(a, A, w)).epsilon(1e-14));
  CHECK_THROWS_AS(relative_error(a, {0, 0, 0}, w), NumericalFailure);
}

TEST_CASE("finite-difference sensitivity") {
  CHECK(sensitivity([](double x) { return 3 * x; }, 2).phi == Approx(1).epsilon(1e-12));
  CHECK(sensitivity([](double) { return 5.0; }, 2).phi == 0);
  CHECK(sensitivity([](double x) { return 3 / x; }, 2).phi == Approx(-1).epsilon(1e-3));
  const auto s = sensitivity([](double x) { return 1 - x; }, 0, 0.01, 0.01, 0.5);
  CHECK(s.phi == Approx(-0.5));
  const auto z = sensitivity([](double x) { return x; }, 1, 0.01);
  CHECK(z.normalized);
  const auto raw = sensitivity([](double x) { return x * x - 1; }, 1, 0.01);
  CHECK_FALSE(raw.normalized);
  CHECK(raw.phi == Approx(2));
}

TEST_CASE("parameters by name") {
  ModelParams p;
  for (const auto& n : parameter_names()) {
    set_parameter(p, n, LinearField(0.25, 0.5));
    CHECK(get_parameter(p, n) == LinearField(0.25, 0.5));
  }
  CHECK_THROWS_AS(set_parameter(p, "zeta", LinearField(1.0)), InvalidInput);
}

TEST_CASE("growth-rate scans") {
  ModelParams p;
  p.Nx = 4;
  p.edges_per_wall = 12;
  p.fine_edge = 0.5;
  p.coarse_edge = 2;
  // linear through the origin in eta
  const auto eta = scan(p, "eta", {0.0, 0.5, 1.0, 2.0});
  CHECK(eta[0].strain == 0);
  for (const auto& r : eta) CHECK(r.strain == Approx(r.value * eta[2].strain).epsilon(1e-10));
  // the laws meet at nu = 0
  const auto nu = scan(p, "nu", {-0.2, 0.0, 0.2});
  CHECK(std::abs(nu[1].strain - nu[1].stress) <= 1e-8 * nu[1].stress);
  CHECK(nu[0].strain > nu[0].stress);
  CHECK(nu[2].strain < nu[2].stress);
}

TEST_CASE("outline asymmetry") {
  Outline o;
  o.segments = {{Vec2(0, 0), Vec2(0, 1)}, {Vec2(0, 1), Vec2(2, 1)}, {Vec2(2, 1), Vec2(2, 0)}};
  CHECK(outline_asymmetry(o) < 1e-15);
  o.segments[1].second = Vec2(2, 1.5);
  o.segments[2].first = Vec2(2, 1.5);
  CHECK(outline_asymmetry(o) > 0.1);
}
