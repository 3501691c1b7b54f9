#pragma once

#include <filesystem>
#include <vector>

#include "ringsim/io.hpp"
#include "ringsim/manifest.hpp"
#include "ringsim/mechanism.hpp"

namespace ringsim {

// Command implementations behind the CLI. Each one reads its manifest block,
// runs the experiment, writes the data files into [run] out_dir and returns
// the computed artifacts.

struct SimulateOutput {
  TrajectoryRecord record;
  EpisodeStats stats;
  std::filesystem::path trajectory_path;
  std::filesystem::path stats_path;
};
SimulateOutput cmd_simulate(const ExperimentManifest& manifest);

struct ScanOutput {
  std::vector<ScanRow> rows;
  int transition_n = -1;  // smallest N with a jammed-seed majority, -1 if none
  std::filesystem::path scan_path;
};
ScanOutput cmd_tadaki_scan(const ExperimentManifest& manifest);

struct SweepOutput {
  SweepResult sweep;
  ResponseCurves curves;
  std::vector<ControlPolicy> report;  // one per requested report omega
  std::filesystem::path summary_path;
  std::filesystem::path curves_path;
  std::filesystem::path kappa_star_path;
};
SweepOutput cmd_sweep(const ExperimentManifest& manifest);

struct FrontierOutput {
  std::vector<ControlPolicy> frontier;
  EpisodeStats baseline;          // uncontrolled runs at the same N
  ControlPolicy chosen;           // policy at the improvement omega
  ImprovementReport improvement;
  std::filesystem::path frontier_path;
  std::filesystem::path improvement_path;
};
FrontierOutput cmd_frontier(const ExperimentManifest& manifest);

// Shared manifest plumbing.
EpisodeConfig episode_config_from(const ExperimentManifest& manifest);
std::filesystem::path resolve_out_dir(const ExperimentManifest& manifest);
int resolve_jobs(const ExperimentManifest& manifest);

}  // namespace ringsim
