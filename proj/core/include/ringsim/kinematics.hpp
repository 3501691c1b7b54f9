#pragma once

#include <cmath>

namespace ringsim {

// Kinematic state of one vehicle on the ring.
struct KinematicState {
  double x = 0.0;  // position [m], kept in [0, C)
  double v = 0.0;  // velocity [m/s], may be transiently negative
  double a = 0.0;  // acceleration [m/s^2]
};

// x reduced mod circumference into [0, C).
inline double wrap_position(double x, double circumference) {
  double r = std::fmod(x, circumference);
  if (r < 0.0) r += circumference;
  if (r >= circumference) r = 0.0;  // fmod rounding at the seam
  return r;
}

// Arc length travelled forward (driving direction) from `from` to `to`, in [0, C).
inline double ring_forward_distance(double from, double to, double circumference) {
  return wrap_position(to - from, circumference);
}

// Bumper-to-bumper distance from follower to the leader ahead of it.
// Negative means the bodies overlap.
inline double bumper_gap(const KinematicState& follower, const KinematicState& leader,
                         double follower_length, double leader_length, double circumference) {
  return ring_forward_distance(follower.x, leader.x, circumference) -
         0.5 * (follower_length + leader_length);
}

}  // namespace ringsim
