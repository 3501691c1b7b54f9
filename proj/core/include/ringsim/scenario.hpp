#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ringsim/dynamics.hpp"
#include "ringsim/params.hpp"

namespace ringsim {

// Scheduled braking disturbance: the vehicle is forced to `decel` while its
// velocity is positive, for t in [start_s, start_s + duration_s).
struct KickSchedule {
  bool enabled = true;
  int vehicle = 1;          // 1-based
  double start_s = 10.0;
  double duration_s = 6.0;
  double decel = -1.0;      // [m/s^2]
};

struct MeasureWindow {
  double lo_s = 200.0;
  double hi_s = 1000.0;
};

struct EpisodeConfig {
  int n = 30;                      // vehicle count
  double circumference = 314.0;    // [m]
  int steps = 3000;
  double dt = 1.0 / 3.0;           // [s]
  AgentParams base;                // fleet baseline; base.dt is kept equal to dt
  double heterogeneity_level = 0.05;
  KickSchedule kick;
  std::vector<int> cav_indices;    // 1-based; empty = uncontrolled
  double cav_on_s = 50.0;
  double kappa = 6.1;              // CAV ideal speed [m/s]
  std::uint64_t heterogeneity_seed = 1;
  std::uint64_t noise_seed = 1;
  MeasureWindow window;

  void validate() const;  // throws std::invalid_argument
};

// Episode output: state at t and the action applied at t, for
// t = 0..steps-1 (a steps=0 episode stores just the initial state).
struct TrajectoryRecord {
  EpisodeConfig config;
  int rows = 0;
  int n = 0;
  std::vector<KinematicState> states;  // rows*n, vehicle i at [t*n + i]
  std::vector<double> actions;         // rows*n, applied u
  std::vector<CollisionEvent> collisions;

  const KinematicState& state_at(int t, int i) const { return states[static_cast<std::size_t>(t) * n + i]; }
  double action_at(int t, int i) const { return actions[static_cast<std::size_t>(t) * n + i]; }
  std::span<const KinematicState> step_states(int t) const {
    return {states.data() + static_cast<std::size_t>(t) * n, static_cast<std::size_t>(n)};
  }
};

// N copies of `base` with multiplicative (1 + eps) heterogeneity on v_star,
// kappa3_v and sigma_a; eps ~ N(0, level^2) truncated at 3 sigma, one
// substream per (agent, field). Same seed, same fleet.
std::vector<AgentParams> build_fleet(const AgentParams& base, int n,
                                     std::uint64_t heterogeneity_seed, double level = 0.05);

// Evenly spaced, at rest: x_i = i*C/N, v = a = 0, no action history.
TrafficState initialize(const EpisodeConfig& config, std::span<const AgentParams> fleet);

// Forced action for the kicked vehicle at time t_s, or nullopt outside the
// kick window. Inside the window the override is decel while v > 0, else 0.
std::optional<double> kick_override(const KickSchedule& kick, double t_s, double v_kicked);

// Fleet with each CAV's ideal speed replaced exactly by config.kappa (the
// control overrides that agent's v_star heterogeneity; everything else kept).
std::vector<AgentParams> activate_cav(std::vector<AgentParams> fleet, const EpisodeConfig& config);

// Runs the full protocol: even-spacing start, kick, CAV activation at
// cav_on_s, `steps` synchronous updates. Deterministic in (config, seeds).
TrajectoryRecord run_episode(const EpisodeConfig& config);

}  // namespace ringsim
