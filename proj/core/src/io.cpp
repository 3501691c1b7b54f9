#include "ringsim/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ringsim {

namespace {

std::string num(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary: byte-identical re-runs
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

Phase phase_from_string(const std::string& s) {
  if (s == "free") return Phase::free;
  if (s == "jammed") return Phase::jammed;
  if (s == "suppressed") return Phase::suppressed;
  throw std::invalid_argument("unknown phase label: " + s);
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& record,
                          std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "step,time_s,vehicle,x_m,v_mps,a_mps2,u_applied\n";
  for (int t = 0; t < record.rows; ++t) {
    const std::string time_s = num(t * record.config.dt);
    for (int i = 0; i < record.n; ++i) {
      const KinematicState& s = record.state_at(t, i);
      out << t << ',' << time_s << ',' << (i + 1) << ',' << num(s.x) << ',' << num(s.v) << ','
          << num(s.a) << ',' << num(record.action_at(t, i)) << '\n';
    }
  }
}

void write_stats_csv(const std::filesystem::path& path, const EpisodeStats& stats, int n,
                     std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "n,density,V_bar,R_bar,flow,phase,collisions\n";
  out << n << ',' << num(stats.density) << ',' << num(stats.v_bar) << ',' << num(stats.r_bar)
      << ',' << num(stats.flow) << ',' << to_string(stats.phase) << ',' << stats.collision_count
      << '\n';
}

void write_sweep_summary_csv(const std::filesystem::path& path, const SweepResult& sweep,
                             std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "# n=" << sweep.n << "\n";
  out << "# cav_count=" << sweep.cav_count << "\n";
  out << "kappa,seed,V_bar,R_bar,phase,collisions\n";
  for (std::size_t k = 0; k < sweep.kappa_grid.size(); ++k)
    for (const SweepCell& cell : sweep.cells[k])
      out << num(sweep.kappa_grid[k]) << ',' << cell.noise_seed << ',' << num(cell.v_bar) << ','
          << num(cell.r_bar) << ',' << to_string(cell.phase) << ',' << cell.collisions << '\n';
}

SweepResult read_sweep_summary_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sweep summary: " + path.string());

  SweepResult sweep;
  std::map<double, std::vector<SweepCell>> by_kappa;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        const std::string value = line.substr(eq + 1);
        if (key == "n") sweep.n = std::stoi(value);
        if (key == "cav_count") sweep.cav_count = std::stoi(value);
      }
      continue;
    }
    if (!header_seen) {  // column header row
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    SweepCell cell;
    double kappa = 0.0;
    std::getline(row, field, ',');
    kappa = std::stod(field);
    std::getline(row, field, ',');
    cell.noise_seed = std::stoull(field);
    std::getline(row, field, ',');
    cell.v_bar = std::stod(field);
    std::getline(row, field, ',');
    cell.r_bar = std::stod(field);
    std::getline(row, field, ',');
    cell.phase = phase_from_string(field);
    std::getline(row, field, ',');
    cell.collisions = std::stoi(field);
    by_kappa[kappa].push_back(cell);
  }
  if (by_kappa.empty()) throw std::runtime_error("sweep summary has no data rows: " + path.string());

  for (auto& [kappa, cells] : by_kappa) {
    sweep.kappa_grid.push_back(kappa);
    sweep.cells.push_back(std::move(cells));
  }
  sweep.recompute_aggregates();
  return sweep;
}

void write_curves_csv(const std::filesystem::path& path, const ResponseCurves& curves,
                      double kappa_step, std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "# bandwidth=" << num(curves.v_fit.bandwidth()) << "\n";
  out << "# v_residual_rms=" << num(curves.v_fit.residual_rms()) << "\n";
  out << "# r_residual_rms=" << num(curves.r_fit.residual_rms()) << "\n";
  out << "kappa,V_fit,R_fit\n";
  const int count =
      static_cast<int>(std::floor((curves.domain_hi - curves.domain_lo) / kappa_step + 1e-9)) + 1;
  for (int k = 0; k < count; ++k) {
    const double kappa = std::min(curves.domain_lo + kappa_step * k, curves.domain_hi);
    out << num(kappa) << ',' << num(curves.v_fit(kappa)) << ',' << num(curves.r_fit(kappa))
        << '\n';
  }
}

void write_frontier_csv(const std::filesystem::path& path,
                        std::span<const ControlPolicy> policies, std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "omega,kappa_star,V_bar,R_bar\n";
  for (const ControlPolicy& p : policies)
    out << num(p.omega) << ',' << num(p.kappa_star) << ',' << num(p.v_bar) << ',' << num(p.r_bar)
        << '\n';
}

void write_scan_csv(const std::filesystem::path& path, std::span<const ScanRow> rows,
                    int transition_n, std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "# transition_n=" << (transition_n > 0 ? std::to_string(transition_n) : "none") << "\n";
  out << "n,density,V_bar,R_bar,flow,jam_fraction\n";
  for (const ScanRow& row : rows)
    out << row.n << ',' << num(row.density) << ',' << num(row.v_bar) << ',' << num(row.r_bar)
        << ',' << num(row.flow) << ',' << num(row.jam_fraction) << '\n';
}

void write_improvement_csv(const std::filesystem::path& path, const ControlPolicy& policy,
                           const EpisodeStats& baseline, const ImprovementReport& report,
                           std::string_view digest) {
  std::ofstream out = open_out(path);
  out << "# manifest_digest=" << digest << "\n";
  out << "omega,kappa_star,V_bar,R_bar,baseline_V_bar,baseline_R_bar,V_change_pct,R_change_pct\n";
  out << num(policy.omega) << ',' << num(policy.kappa_star) << ',' << num(policy.v_bar) << ','
      << num(policy.r_bar) << ',' << num(baseline.v_bar) << ',' << num(baseline.r_bar) << ','
      << num(report.v_change_pct) << ',' << num(report.r_change_pct) << '\n';
}

void append_run_log(const std::filesystem::path& out_dir, std::string_view command,
                    std::string_view digest, double elapsed_s) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "run.log", std::ios::app);
  if (!out) return;  // the log is best-effort
  const auto now = std::chrono::system_clock::now();
  const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
  char when[32];
  std::strftime(when, sizeof(when), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&stamp));
  out << when << " command=" << command << " manifest_digest=" << digest
      << " elapsed_s=" << num(elapsed_s) << "\n";
}

}  // namespace ringsim
