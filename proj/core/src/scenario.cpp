#include "ringsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ringsim/rng.hpp"

namespace ringsim {

namespace {

constexpr double kTimeEps = 1e-9;

// First step index whose time is >= t_s (up to rounding of t_s/dt).
int step_of_time(double t_s, double dt) {
  return static_cast<int>(std::ceil(t_s / dt - kTimeEps));
}

}  // namespace

void EpisodeConfig::validate() const {
  if (n < 1) throw std::invalid_argument("EpisodeConfig: n must be at least 1");
  if (circumference <= 0.0) throw std::invalid_argument("EpisodeConfig: circumference must be positive");
  if (steps < 0) throw std::invalid_argument("EpisodeConfig: steps must be non-negative");
  if (dt <= 0.0) throw std::invalid_argument("EpisodeConfig: dt must be positive");
  if (heterogeneity_level < 0.0)
    throw std::invalid_argument("EpisodeConfig: heterogeneity_level must be non-negative");
  if (window.lo_s > window.hi_s)
    throw std::invalid_argument("EpisodeConfig: measurement window is inverted");
  if (kick.enabled && (kick.vehicle < 1 || kick.vehicle > n))
    throw std::invalid_argument("EpisodeConfig: kicked vehicle index out of range");
  for (int idx : cav_indices)
    if (idx < 1 || idx > n)
      throw std::invalid_argument("EpisodeConfig: CAV index " + std::to_string(idx) +
                                  " out of range 1.." + std::to_string(n));
  if (!cav_indices.empty() && kappa <= 0.0)
    throw std::invalid_argument("EpisodeConfig: kappa must be positive when CAVs are present");
  base.validate();
  if (base.dt != dt) throw std::invalid_argument("EpisodeConfig: base.dt differs from dt");
  if (circumference <= 2.0 * base.length)
    throw std::invalid_argument("EpisodeConfig: circumference too small for vehicle length");
}

std::vector<AgentParams> build_fleet(const AgentParams& base, int n,
                                     std::uint64_t heterogeneity_seed, double level) {
  const double bound = 3.0 * level;
  std::vector<AgentParams> fleet;
  fleet.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    AgentParams agent = base;
    double* fields[] = {&agent.v_star, &agent.kappa3_v, &agent.sigma_a};
    for (int f = 0; f < 3; ++f) {
      std::mt19937_64 eng(substream_seed(heterogeneity_seed, static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(f)));
      *fields[f] *= 1.0 + truncated_normal(eng, level, bound);
    }
    fleet.push_back(agent);
  }
  return fleet;
}

TrafficState initialize(const EpisodeConfig& config, std::span<const AgentParams> fleet) {
  (void)fleet;
  TrafficState state;
  state.t = 0;
  state.states.resize(static_cast<std::size_t>(config.n));
  state.prev_actions.assign(static_cast<std::size_t>(config.n), 0.0);
  const double spacing = config.circumference / config.n;
  for (int i = 0; i < config.n; ++i) state.states[i] = {spacing * i, 0.0, 0.0};
  return state;
}

std::optional<double> kick_override(const KickSchedule& kick, double t_s, double v_kicked) {
  if (!kick.enabled) return std::nullopt;
  if (t_s < kick.start_s - kTimeEps) return std::nullopt;
  if (t_s >= kick.start_s + kick.duration_s - kTimeEps) return std::nullopt;
  return v_kicked > 0.0 ? kick.decel : 0.0;
}

std::vector<AgentParams> activate_cav(std::vector<AgentParams> fleet, const EpisodeConfig& config) {
  for (int idx : config.cav_indices) {
    if (idx < 1 || idx > static_cast<int>(fleet.size()))
      throw std::invalid_argument("activate_cav: CAV index out of range");
    fleet[static_cast<std::size_t>(idx - 1)].v_star = config.kappa;
  }
  return fleet;
}

TrajectoryRecord run_episode(const EpisodeConfig& config) {
  config.validate();

  const std::vector<AgentParams> fleet =
      build_fleet(config.base, config.n, config.heterogeneity_seed, config.heterogeneity_level);
  const bool has_cav = !config.cav_indices.empty();
  const std::vector<AgentParams> controlled =
      has_cav ? activate_cav(fleet, config) : std::vector<AgentParams>{};
  const int cav_on_step = has_cav ? step_of_time(config.cav_on_s, config.dt) : 0;

  NoiseStreams noise(config.noise_seed, config.n);
  TrafficState state = initialize(config, fleet);

  TrajectoryRecord record;
  record.config = config;
  record.n = config.n;
  record.rows = std::max(config.steps, 1);
  record.states.resize(static_cast<std::size_t>(record.rows) * config.n);
  record.actions.assign(static_cast<std::size_t>(record.rows) * config.n, 0.0);

  if (config.steps == 0) {
    std::copy(state.states.begin(), state.states.end(), record.states.begin());
    return record;
  }

  const int kicked = config.kick.vehicle - 1;
  for (int t = 0; t < config.steps; ++t) {
    std::copy(state.states.begin(), state.states.end(),
              record.states.begin() + static_cast<std::size_t>(t) * config.n);

    ActionOverrides overrides;
    if (config.kick.enabled) {
      const auto forced = kick_override(config.kick, t * config.dt, state.states[kicked].v);
      if (forced) overrides.emplace_back(kicked, *forced);
    }

    const std::vector<AgentParams>& active =
        (has_cav && t >= cav_on_step) ? controlled : fleet;
    state = step(state, active, overrides, noise, config.circumference, &record.collisions);

    std::copy(state.prev_actions.begin(), state.prev_actions.end(),
              record.actions.begin() + static_cast<std::size_t>(t) * config.n);
  }
  return record;
}

}  // namespace ringsim
