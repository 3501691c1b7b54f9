#include "ringsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ringsim {

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::free: return "free";
    case Phase::jammed: return "jammed";
    case Phase::suppressed: return "suppressed";
  }
  return "unknown";
}

double average_speed(std::span<const KinematicState> states) {
  double sum = 0.0;
  for (const KinematicState& s : states) sum += s.v;
  return sum / static_cast<double>(states.size());
}

double average_speed(const TrafficState& state) { return average_speed(std::span(state.states)); }

double speed_range(std::span<const KinematicState> states) {
  double lo = states.front().v;
  double hi = lo;
  for (const KinematicState& s : states) {
    lo = std::min(lo, s.v);
    hi = std::max(hi, s.v);
  }
  return hi - lo;
}

double speed_range(const TrafficState& state) { return speed_range(std::span(state.states)); }

Phase classify_phase(const EpisodeStats& stats, std::optional<double> kappa,
                     const PhaseThresholds& thresholds) {
  if (stats.r_bar > thresholds.r_threshold) return Phase::jammed;
  if (kappa && *kappa < thresholds.kappa_l_ref &&
      stats.v_bar < thresholds.suppressed_fraction * thresholds.kappa_l_ref)
    return Phase::suppressed;
  return Phase::free;
}

EpisodeStats long_run_stats(const TrajectoryRecord& record, double window_lo_s,
                            double window_hi_s, const PhaseThresholds& thresholds) {
  constexpr double eps = 1e-6;
  const double dt = record.config.dt;
  double v_sum = 0.0;
  double r_sum = 0.0;
  int count = 0;
  for (int t = 0; t < record.rows; ++t) {
    const double time_s = t * dt;
    if (time_s < window_lo_s - eps || time_s > window_hi_s + eps) continue;
    const auto states = record.step_states(t);
    v_sum += average_speed(states);
    r_sum += speed_range(states);
    ++count;
  }
  if (count == 0)
    throw std::invalid_argument("long_run_stats: measurement window contains no recorded step");

  EpisodeStats stats;
  stats.v_bar = v_sum / count;
  stats.r_bar = r_sum / count;
  stats.density = record.n / record.config.circumference;
  stats.flow = stats.density * stats.v_bar;
  stats.collision_count = static_cast<int>(record.collisions.size());
  const std::optional<double> kappa = record.config.cav_indices.empty()
                                          ? std::nullopt
                                          : std::optional<double>(record.config.kappa);
  stats.phase = classify_phase(stats, kappa, thresholds);
  return stats;
}

EpisodeStats long_run_stats(const TrajectoryRecord& record, const PhaseThresholds& thresholds) {
  return long_run_stats(record, record.config.window.lo_s, record.config.window.hi_s, thresholds);
}

}  // namespace ringsim
