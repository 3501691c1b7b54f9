#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ringsim/behavior.hpp"
#include "ringsim/kinematics.hpp"
#include "ringsim/params.hpp"
#include "ringsim/rng.hpp"

namespace ringsim {

// Full traffic snapshot at one step. Vehicle i's leader is vehicle
// (i+1) mod N; the ordering never changes (single lane, no overtaking).
struct TrafficState {
  std::int64_t t = 0;                     // step index
  std::vector<KinematicState> states;     // size N
  std::vector<double> prev_actions;       // applied u at t-1, 0 at episode start
};

// Bumper overlap detected after a step. Non-fatal; logged and counted.
struct CollisionEvent {
  std::int64_t step = 0;
  int follower = 0;  // 0-based vehicle index
  int leader = 0;
  double gap = 0.0;  // [m], <= 0
};

// Forced actions for this step, (0-based agent index, action) pairs.
using ActionOverrides = std::vector<std::pair<int, double>>;

// Advances the whole system one period: every agent's Boltzmann action is
// computed from the same time-t snapshot, overrides are applied, then the
// AR(1) acceleration / velocity / wrapped position updates commit with
// per-agent Gaussian noise. Appends to `events` when a bumper gap goes
// non-positive in the new state.
TrafficState step(const TrafficState& state, std::span<const AgentParams> fleet,
                  const ActionOverrides& overrides, NoiseStreams& noise,
                  double circumference, std::vector<CollisionEvent>* events = nullptr);

}  // namespace ringsim
