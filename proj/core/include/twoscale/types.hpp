#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace twoscale {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline Mat2 sym(const Mat2& a) { return 0.5 * (a + a.transpose()); }

// Thrown when input data violates a documented contract (bad geometry,
// out-of-range material, malformed config).
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical stage breaks down (singular system, residual check).
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GrowthLaw { Stress, Strain };

inline const char* to_string(GrowthLaw law) { return law == GrowthLaw::Stress ? "stress" : "strain"; }

} // namespace twoscale
