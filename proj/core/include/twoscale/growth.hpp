#pragma once

#include "twoscale/types.hpp"

namespace twoscale {

struct GrowthParams {
  double eta = 1.0;
  double tau = 0.0;
  double clamp_bound = 1e6;
  GrowthLaw law = GrowthLaw::Strain;
};

// Q^T D+ Q of a symmetric 2x2 matrix; equal eigenvalues give max(l, 0) I.
Mat2 positive_part(const Mat2& v);

// Componentwise saturation to [-m, m].
Mat2 clamp(const Mat2& g, double m);

// clamp(eta [avg - tau I]+, M)
Mat2 growth_rate(const Mat2& avg, const GrowthParams& p);

struct StepReport {
  bool det_decreased = false;
  bool large_step = false; // ||dt G||_F > 0.5
};

// (I + dt G) F
Mat2 euler_step(const Mat2& fg, const Mat2& g, double dt, StepReport* report = nullptr);

struct InverseDet {
  Mat2 inverse;
  double det;
};

InverseDet inverse_and_det(const Mat2& f);

} // namespace twoscale
