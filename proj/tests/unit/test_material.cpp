#include "twoscale/material.hpp"

#include <doctest.h>

using namespace twoscale;
using doctest::Approx;

TEST_CASE("isotropic plane stress components") {
  const auto t0 = isotropic_plane_stress(1, 0);
  CHECK(t0.c == std::array<double, 6>{1, 1, 0, 0.5, 0, 0});
  const auto t = isotropic_plane_stress(1, 0.3);
  CHECK(t.e1111() == Approx(1.0 / 0.91).epsilon(1e-12));
  CHECK(t.e1111() == Approx(1.098901).epsilon(1e-6));
  CHECK(t.e1122() == Approx(0.329670).epsilon(1e-5));
  CHECK(t.e1212() == Approx(0.384615).epsilon(1e-5));
  const auto t2 = isotropic_plane_stress(2, 0.3);
  for (int i = 0; i < 6; ++i) CHECK(t2.c[i] == Approx(2 * t.c[i]).epsilon(1e-15));
}

TEST_CASE("isotropic plane stress rejects bad input") {
  CHECK_THROWS_AS(isotropic_plane_stress(0, 0.3), InvalidInput);
  CHECK_THROWS_AS(isotropic_plane_stress(1, 0.5), InvalidInput);
  CHECK_THROWS_AS(isotropic_plane_stress(1, 0.7), InvalidInput);
  CHECK_THROWS_AS(isotropic_plane_stress(1, -1), InvalidInput);
}

TEST_CASE("contract") {
  const Mat2 s = contract(isotropic_plane_stress(1, 0), Mat2::Identity());
  CHECK((s - Mat2::Identity()).norm() < 1e-15);
  CHECK(contract(isotropic_plane_stress(1, 0.3), Mat2::Zero()).norm() == 0);
  Mat2 e;
  e << 1, 0, 0, 0;
  const Mat2 s2 = contract(isotropic_plane_stress(1, 0.3), e);
  CHECK(s2(0, 0) == Approx(1.098901).epsilon(1e-6));
  CHECK(s2(1, 1) == Approx(0.329670).epsilon(1e-5));
  CHECK(s2(0, 1) == 0);
  Mat2 shear;
  shear << 0, 0.1, 0.1, 0;
  CHECK(contract(isotropic_plane_stress(1, 0.3), shear)(0, 1) == Approx(2 * 0.1 / 2.6 * 1.0).epsilon(1e-12));
}

TEST_CASE("orthotropic properties") {
  auto p = orthotropic_props(isotropic_plane_stress(1, 0.3));
  CHECK(p.e1 == Approx(1).epsilon(1e-12));
  CHECK(p.e2 == Approx(1).epsilon(1e-12));
  CHECK(p.nu12 == Approx(0.3).epsilon(1e-12));
  CHECK(p.g12 == Approx(1 / 2.6).epsilon(1e-12));
  p = orthotropic_props(isotropic_plane_stress(1, 0));
  CHECK(p.e1 == Approx(1));
  CHECK(p.nu12 == Approx(0).epsilon(1e-15));
  CHECK(p.g12 == Approx(0.5));
  ElasticTensor2D syn;
  syn.c = {2, 1, 0.2, 0.4, 0, 0};
  p = orthotropic_props(syn);
  CHECK(p.e1 == Approx(1.96).epsilon(1e-12));
  CHECK(p.e2 == Approx(0.98).epsilon(1e-12));
  CHECK(p.nu12 == Approx(0.2).epsilon(1e-12));
  CHECK(p.g12 == Approx(0.4).epsilon(1e-12));
  syn.c[4] = 0.1;
  CHECK_THROWS_AS(orthotropic_props(syn), InvalidInput);
}

TEST_CASE("voigt round trip and positive definiteness") {
  const auto t = isotropic_plane_stress(1.7, 0.2);
  CHECK(ElasticTensor2D::from_voigt(t.voigt()) == t);
  CHECK(is_positive_definite(t));
  ElasticTensor2D bad;
  bad.c = {1, 1, 2, 0.5, 0, 0};
  CHECK_FALSE(is_positive_definite(bad));
}
