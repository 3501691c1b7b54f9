#pragma once

#include <optional>
#include <span>
#include <string>

#include "ringsim/scenario.hpp"

namespace ringsim {

enum class Phase { free, jammed, suppressed };

std::string to_string(Phase phase);

// System-level observables of one episode over the measurement window.
struct EpisodeStats {
  double v_bar = 0.0;        // long-run mean of the fleet average speed [m/s]
  double r_bar = 0.0;        // long-run mean of the fleet speed range [m/s]
  double density = 0.0;      // N/C [vehicles/m]
  double flow = 0.0;         // density * v_bar [vehicles/s]
  Phase phase = Phase::free;
  int collision_count = 0;
};

// Phase classification knobs. R separates jammed from the rest; a CAV pacing
// the fleet below kappa_l_ref with correspondingly low mean speed is
// suppressed flow.
struct PhaseThresholds {
  double r_threshold = 3.0;          // [m/s]
  double kappa_l_ref = 2.5;          // [m/s]
  double suppressed_fraction = 1.0;  // of kappa_l_ref
};

double average_speed(std::span<const KinematicState> states);
double average_speed(const TrafficState& state);

double speed_range(std::span<const KinematicState> states);
double speed_range(const TrafficState& state);

Phase classify_phase(const EpisodeStats& stats, std::optional<double> kappa,
                     const PhaseThresholds& thresholds = {});

// Time averages of V(t), R(t) over recorded steps with t*dt inside the
// window. Throws std::invalid_argument when the window contains no step.
EpisodeStats long_run_stats(const TrajectoryRecord& record, double window_lo_s,
                            double window_hi_s, const PhaseThresholds& thresholds = {});

// Convenience: the record's own configured window.
EpisodeStats long_run_stats(const TrajectoryRecord& record,
                            const PhaseThresholds& thresholds = {});

}  // namespace ringsim
