#pragma once

#include <functional>
#include <utility>

#include "hopsim/types.hpp"

namespace hopsim {

// Classical RK4 on the second-order system qdd = accel(q, qd).
template <typename AccelFn>
void rk4_step(Vec4& q, Vec4& qd, double dt, AccelFn&& accel) {
  const Vec4 k1q = qd;
  const Vec4 k1v = accel(q, qd);

  const Vec4 k2q = qd + 0.5 * dt * k1v;
  const Vec4 k2v = accel(q + 0.5 * dt * k1q, qd + 0.5 * dt * k1v);

  const Vec4 k3q = qd + 0.5 * dt * k2v;
  const Vec4 k3v = accel(q + 0.5 * dt * k2q, qd + 0.5 * dt * k2v);

  const Vec4 k4q = qd + dt * k3v;
  const Vec4 k4v = accel(q + dt * k3q, qd + dt * k3v);

  q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  qd += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

// Bisection refinement of an event time on (0, dt]. `value_at(h)` evaluates
// the event function after integrating h from the step's start state;
// requires value_at(0) > 0 and value_at(dt) <= 0. Returns the first h with a
// bracket narrower than tol where the function is non-positive.
template <typename ValueFn>
double refine_crossing(double dt, double tol, ValueFn&& value_at) {
  double lo = 0.0, hi = dt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (value_at(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace hopsim
