#include "hopsim/bezier.hpp"

#include <cmath>

#include "hopsim/errors.hpp"

namespace hopsim {

double bezier_scalar_profile(double peak, double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw DomainError("bezier profile phase outside [0,1]: s=" + std::to_string(s));
  const double r = 1.0 - s;
  // Bernstein basis of degree 4 with points (0, p/2, 2p, p/2, 0)
  const double b1 = 4.0 * s * r * r * r;
  const double b2 = 6.0 * s * s * r * r;
  const double b3 = 4.0 * s * s * s * r;
  return peak * (0.5 * b1 + 2.0 * b2 + 0.5 * b3);
}

Vec3 bezier_force_profile(const GaitParams& gait, double s, double horizontal_peak_override) {
  const double horizontal = horizontal_peak_override >= 0.0 ? horizontal_peak_override
                                                            : gait.peak_horizontal_force;
  return Vec3(0.0, bezier_scalar_profile(horizontal, s),
              bezier_scalar_profile(gait.peak_vertical_force, s));
}

}  // namespace hopsim
