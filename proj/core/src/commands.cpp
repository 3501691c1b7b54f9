#include "ringsim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <stdexcept>

#include "ringsim/worker_pool.hpp"

namespace ringsim {

namespace {

class Stopwatch {
 public:
  double elapsed_s() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

std::vector<double> ascending_grid(double lo, double hi, double step, const char* what) {
  if (step <= 0.0 || hi < lo)
    throw std::invalid_argument(std::string(what) + ": bad grid specification");
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (int k = 0; k < count; ++k) grid.push_back(std::min(lo + step * k, hi));
  if (grid.back() < hi - 1e-12) grid.push_back(hi);
  return grid;
}

// Window clamped into the recorded span so short smoke runs still yield
// stats; falls back to the full episode when disjoint.
EpisodeStats stats_with_clamped_window(const TrajectoryRecord& record) {
  const double end_s = (record.rows - 1) * record.config.dt;
  double lo = std::min(record.config.window.lo_s, end_s);
  double hi = std::min(record.config.window.hi_s, end_s);
  if (hi < lo) hi = lo;
  return long_run_stats(record, lo, hi);
}

EpisodeStats mean_stats(const std::vector<EpisodeStats>& runs, std::optional<double> kappa) {
  EpisodeStats mean;
  for (const EpisodeStats& s : runs) {
    mean.v_bar += s.v_bar;
    mean.r_bar += s.r_bar;
    mean.collision_count += s.collision_count;
  }
  mean.v_bar /= static_cast<double>(runs.size());
  mean.r_bar /= static_cast<double>(runs.size());
  mean.density = runs.front().density;
  mean.flow = mean.density * mean.v_bar;
  mean.phase = classify_phase(mean, kappa);
  return mean;
}

}  // namespace

EpisodeConfig episode_config_from(const ExperimentManifest& m) {
  EpisodeConfig cfg;
  cfg.n = static_cast<int>(m.get_int("episode", "n"));
  cfg.circumference = m.get_double("episode", "circumference");
  cfg.steps = static_cast<int>(m.get_int("episode", "steps"));
  cfg.dt = m.get_double("episode", "dt");
  cfg.heterogeneity_level = m.get_double("episode", "heterogeneity_level");
  cfg.heterogeneity_seed = m.get_seed("episode", "heterogeneity_seed");
  cfg.noise_seed = m.get_seed("episode", "noise_seed");
  cfg.kick.enabled = m.get_bool("episode", "kick_enabled");
  cfg.kick.vehicle = static_cast<int>(m.get_int("episode", "kick_vehicle"));
  cfg.kick.start_s = m.get_double("episode", "kick_start_s");
  cfg.kick.duration_s = m.get_double("episode", "kick_duration_s");
  cfg.kick.decel = m.get_double("episode", "kick_decel");
  cfg.cav_on_s = m.get_double("episode", "cav_on_s");
  cfg.kappa = m.get_double("episode", "kappa");
  cfg.window.lo_s = m.get_double("episode", "window_lo_s");
  cfg.window.hi_s = m.get_double("episode", "window_hi_s");

  AgentParams& base = cfg.base;
  base.v_star = m.get_double("agent", "v_star");
  base.kappa1 = m.get_double("agent", "kappa1");
  base.w1 = m.get_double("agent", "w1");
  base.kappa2_v = m.get_double("agent", "kappa2_v");
  base.kappa2_0 = m.get_double("agent", "kappa2_0");
  base.w2 = m.get_double("agent", "w2");
  base.kappa3_c = m.get_double("agent", "kappa3_c");
  base.kappa3_v = m.get_double("agent", "kappa3_v");
  base.kappa3_d = m.get_double("agent", "kappa3_d");
  base.w3 = m.get_double("agent", "w3");
  base.length = m.get_double("agent", "length");
  base.sigma_x = m.get_double("agent", "sigma_x");
  base.sigma_v = m.get_double("agent", "sigma_v");
  base.sigma_a = m.get_double("agent", "sigma_a");
  base.gamma = m.get_double("agent", "gamma");
  base.lambda = m.get_double("agent", "lambda");
  base.u_min = m.get_double("agent", "u_min");
  base.u_max = m.get_double("agent", "u_max");
  base.grid_points = static_cast<int>(m.get_int("agent", "grid_points"));
  base.horizon = static_cast<int>(m.get_int("agent", "horizon"));
  base.dt = cfg.dt;

  const int cav_count = static_cast<int>(m.get_int("episode", "cav_count"));
  if (cav_count > 0) cfg.cav_indices = place_cavs(cfg.n, cav_count);
  cfg.validate();
  return cfg;
}

std::filesystem::path resolve_out_dir(const ExperimentManifest& m) {
  std::string dir = m.get("run", "out_dir");
  if (dir.empty()) {
    if (const char* env = std::getenv("RINGSIM_OUT")) dir = env;
  }
  if (dir.empty()) dir = "out";
  std::filesystem::create_directories(dir);
  return dir;
}

int resolve_jobs(const ExperimentManifest& m) {
  return static_cast<int>(m.get_int("run", "jobs"));
}

SimulateOutput cmd_simulate(const ExperimentManifest& manifest) {
  const Stopwatch watch;
  const EpisodeConfig cfg = episode_config_from(manifest);
  const std::filesystem::path out_dir = resolve_out_dir(manifest);
  const std::string digest = manifest.digest();

  SimulateOutput output;
  output.record = run_episode(cfg);
  output.stats = stats_with_clamped_window(output.record);
  output.trajectory_path = out_dir / "trajectory.csv";
  output.stats_path = out_dir / "stats.csv";
  write_trajectory_csv(output.trajectory_path, output.record, digest);
  write_stats_csv(output.stats_path, output.stats, cfg.n, digest);
  append_run_log(out_dir, "simulate", digest, watch.elapsed_s());
  return output;
}

ScanOutput cmd_tadaki_scan(const ExperimentManifest& manifest) {
  const Stopwatch watch;
  const EpisodeConfig proto = episode_config_from(manifest);
  const std::filesystem::path out_dir = resolve_out_dir(manifest);
  const std::string digest = manifest.digest();
  const int n_lo = static_cast<int>(manifest.get_int("tadaki", "n_lo"));
  const int n_hi = static_cast<int>(manifest.get_int("tadaki", "n_hi"));
  const int seeds = static_cast<int>(manifest.get_int("tadaki", "seeds"));
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("tadaki scan: bad n range");
  if (seeds < 1) throw std::invalid_argument("tadaki scan: need at least one seed");

  const int n_count = n_hi - n_lo + 1;
  std::vector<EpisodeStats> cells(static_cast<std::size_t>(n_count) * seeds);
  parallel_for(n_count * seeds, resolve_jobs(manifest), [&](int cell) {
    EpisodeConfig cfg = proto;
    cfg.n = n_lo + cell / seeds;
    cfg.cav_indices.clear();  // scan is uncontrolled
    cfg.noise_seed = proto.noise_seed + static_cast<std::uint64_t>(cell % seeds);
    cfg.validate();
    cells[static_cast<std::size_t>(cell)] = long_run_stats(run_episode(cfg));
  });

  ScanOutput output;
  for (int j = 0; j < n_count; ++j) {
    const int n = n_lo + j;
    ScanRow row;
    row.n = n;
    row.density = n / proto.circumference;
    int jammed = 0;
    for (int s = 0; s < seeds; ++s) {
      const EpisodeStats& stats = cells[static_cast<std::size_t>(j) * seeds + s];
      row.v_bar += stats.v_bar;
      row.r_bar += stats.r_bar;
      if (stats.phase == Phase::jammed) ++jammed;
    }
    row.v_bar /= seeds;
    row.r_bar /= seeds;
    row.flow = row.density * row.v_bar;
    row.jam_fraction = static_cast<double>(jammed) / seeds;
    if (output.transition_n < 0 && 2 * jammed > seeds) output.transition_n = n;
    output.rows.push_back(row);
  }

  output.scan_path = out_dir / "scan.csv";
  write_scan_csv(output.scan_path, output.rows, output.transition_n, digest);
  append_run_log(out_dir, "tadaki-scan", digest, watch.elapsed_s());
  return output;
}

SweepOutput cmd_sweep(const ExperimentManifest& manifest) {
  const Stopwatch watch;
  const EpisodeConfig base = episode_config_from(manifest);
  const std::filesystem::path out_dir = resolve_out_dir(manifest);
  const std::string digest = manifest.digest();

  const std::vector<double> grid =
      ascending_grid(manifest.get_double("sweep", "kappa_lo"),
                     manifest.get_double("sweep", "kappa_hi"),
                     manifest.get_double("sweep", "kappa_step"), "sweep");
  const int seeds = static_cast<int>(manifest.get_int("sweep", "seeds"));
  const int cav_count = static_cast<int>(manifest.get_int("sweep", "cav_count"));
  const double bandwidth = manifest.get_double("sweep", "bandwidth");

  SweepOutput output;
  output.sweep = sweep_kappa(base, cav_count, grid, seeds, resolve_jobs(manifest));
  output.curves = fit_response_curves(output.sweep, bandwidth);
  for (double omega : manifest.get_list("sweep", "report_omega"))
    output.report.push_back(optimize_kappa(output.curves, omega));

  output.summary_path = out_dir / "sweep_summary.csv";
  output.curves_path = out_dir / "curves.csv";
  output.kappa_star_path = out_dir / "kappa_star.csv";
  write_sweep_summary_csv(output.summary_path, output.sweep, digest);
  write_curves_csv(output.curves_path, output.curves, 0.01, digest);
  write_frontier_csv(output.kappa_star_path, output.report, digest);
  append_run_log(out_dir, "sweep", digest, watch.elapsed_s());
  return output;
}

FrontierOutput cmd_frontier(const ExperimentManifest& manifest) {
  const Stopwatch watch;
  const EpisodeConfig base = episode_config_from(manifest);
  const std::filesystem::path out_dir = resolve_out_dir(manifest);
  const std::string digest = manifest.digest();
  const int jobs = resolve_jobs(manifest);

  // completed sweep if given, inline sweep otherwise
  SweepResult sweep;
  const std::string sweep_file = manifest.get("frontier", "sweep_file");
  if (!sweep_file.empty()) {
    sweep = read_sweep_summary_csv(sweep_file);
    if (sweep.n != base.n)
      throw std::invalid_argument("frontier: sweep file is for n=" + std::to_string(sweep.n) +
                                  " but the manifest requests n=" + std::to_string(base.n));
  } else {
    sweep = sweep_kappa(base, static_cast<int>(manifest.get_int("sweep", "cav_count")),
                        ascending_grid(manifest.get_double("sweep", "kappa_lo"),
                                       manifest.get_double("sweep", "kappa_hi"),
                                       manifest.get_double("sweep", "kappa_step"), "sweep"),
                        static_cast<int>(manifest.get_int("sweep", "seeds")), jobs);
  }
  const ResponseCurves curves =
      fit_response_curves(sweep, manifest.get_double("sweep", "bandwidth"));

  const std::vector<double> omega_grid =
      ascending_grid(manifest.get_double("frontier", "omega_lo"),
                     manifest.get_double("frontier", "omega_hi"),
                     manifest.get_double("frontier", "omega_step"), "frontier");

  FrontierOutput output;
  output.frontier = efficient_frontier(curves, omega_grid);

  // uncontrolled baseline at the same N
  const int baseline_seeds = static_cast<int>(manifest.get_int("frontier", "baseline_seeds"));
  if (baseline_seeds < 1) throw std::invalid_argument("frontier: need at least one baseline seed");
  std::vector<EpisodeStats> baseline_runs(static_cast<std::size_t>(baseline_seeds));
  parallel_for(baseline_seeds, jobs, [&](int s) {
    EpisodeConfig cfg = base;
    cfg.cav_indices.clear();
    cfg.noise_seed = base.noise_seed + static_cast<std::uint64_t>(s);
    baseline_runs[static_cast<std::size_t>(s)] = long_run_stats(run_episode(cfg));
  });
  output.baseline = mean_stats(baseline_runs, std::nullopt);

  const double improvement_omega = manifest.get_double("frontier", "improvement_omega");
  output.chosen = optimize_kappa(curves, improvement_omega);
  output.improvement = improvement_report(output.chosen, output.baseline);

  output.frontier_path = out_dir / "frontier.csv";
  output.improvement_path = out_dir / "improvement.csv";
  write_frontier_csv(output.frontier_path, output.frontier, digest);
  write_improvement_csv(output.improvement_path, output.chosen, output.baseline,
                        output.improvement, digest);
  append_run_log(out_dir, "frontier", digest, watch.elapsed_s());
  return output;
}

}  // namespace ringsim
