#include "ringsim/dynamics.hpp"

#include <cassert>

namespace ringsim {

TrafficState step(const TrafficState& state, std::span<const AgentParams> fleet,
                  const ActionOverrides& overrides, NoiseStreams& noise,
                  double circumference, std::vector<CollisionEvent>* events) {
  const int n = static_cast<int>(state.states.size());
  assert(static_cast<int>(fleet.size()) == n);
  assert(static_cast<int>(state.prev_actions.size()) == n);
  const double dt = fleet.front().dt;

  // Phase 1: every action from the same time-t snapshot (simultaneous moves).
  std::vector<double> actions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const DecisionState decision{state.states[i], state.states[j], fleet[i].length,
                                 fleet[j].length, circumference};
    actions[i] = boltzmann_action(decision, fleet[i]);
  }
  for (const auto& [agent, forced] : overrides) actions[agent] = forced;

  // Phase 2: commit AR(1) acceleration, velocity, wrapped position.
  TrafficState next;
  next.t = state.t + 1;
  next.states.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const KinematicState& cur = state.states[i];
    const AgentParams& p = fleet[i];
    KinematicState& out = next.states[i];
    out.x = wrap_position(cur.x + cur.v * dt + p.sigma_x * noise.normal(i, 0), circumference);
    out.v = cur.v + cur.a * dt + p.sigma_v * noise.normal(i, 1);
    out.a = p.gamma * cur.a + (actions[i] - p.gamma * state.prev_actions[i]) +
            p.sigma_a * noise.normal(i, 2);
  }
  next.prev_actions = std::move(actions);

  if (events != nullptr && n >= 2) {
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const double gap = bumper_gap(next.states[i], next.states[j], fleet[i].length,
                                    fleet[j].length, circumference);
      if (gap <= 0.0) events->push_back({next.t, i, j, gap});
    }
  }
  return next;
}

}  // namespace ringsim
