#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "ringsim/mechanism.hpp"
#include "ringsim/metrics.hpp"
#include "ringsim/scenario.hpp"

namespace ringsim {

// All data files are comma-delimited with a header row, preceded by comment
// lines of the form "# key=value"; the first is always the producing
// manifest digest. Re-runs with equal manifests are byte-identical.

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& record,
                          std::string_view digest);

void write_stats_csv(const std::filesystem::path& path, const EpisodeStats& stats, int n,
                     std::string_view digest);

void write_sweep_summary_csv(const std::filesystem::path& path, const SweepResult& sweep,
                             std::string_view digest);

// Rebuilds a SweepResult (cells + aggregates) from a summary file.
SweepResult read_sweep_summary_csv(const std::filesystem::path& path);

// Fitted curves sampled on a dense kappa grid.
void write_curves_csv(const std::filesystem::path& path, const ResponseCurves& curves,
                      double kappa_step, std::string_view digest);

void write_frontier_csv(const std::filesystem::path& path,
                        std::span<const ControlPolicy> policies, std::string_view digest);

// Density-dependence scan row (one per vehicle count).
struct ScanRow {
  int n = 0;
  double density = 0.0;
  double v_bar = 0.0;
  double r_bar = 0.0;
  double flow = 0.0;
  double jam_fraction = 0.0;
};

// transition_n < 0 means no jammed majority in the scanned range.
void write_scan_csv(const std::filesystem::path& path, std::span<const ScanRow> rows,
                    int transition_n, std::string_view digest);

void write_improvement_csv(const std::filesystem::path& path, const ControlPolicy& policy,
                           const EpisodeStats& baseline, const ImprovementReport& report,
                           std::string_view digest);

// Appends a timestamped line to the run log (the only place timestamps go).
void append_run_log(const std::filesystem::path& out_dir, std::string_view command,
                    std::string_view digest, double elapsed_s);

}  // namespace ringsim
