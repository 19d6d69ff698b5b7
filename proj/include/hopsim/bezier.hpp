#pragma once

#include "hopsim/gait.hpp"
#include "hopsim/types.hpp"

namespace hopsim {

// Degree-4 Bernstein profile with control points peak * (0, 1/2, 2, 1/2, 0):
// zero value at both ends, maximum exactly `peak` at s = 0.5.
// Throws DomainError for s outside [0, 1].
double bezier_scalar_profile(double peak, double s);

// Stance force profile in the hip frame (radial, forward, vertical):
// radial component zero, forward peaks at peak_horizontal_force, vertical at
// peak_vertical_force. `horizontal_peak_override` < 0 means "use the gait
// value" (the speed loop passes its modulated peak here).
Vec3 bezier_force_profile(const GaitParams& gait, double s,
                          double horizontal_peak_override = -1.0);

}  // namespace hopsim
