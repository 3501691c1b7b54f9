#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ringsim/metrics.hpp"
#include "ringsim/scenario.hpp"

namespace ringsim {

// One (kappa, seed) Monte Carlo cell.
struct SweepCell {
  std::uint64_t noise_seed = 0;
  double v_bar = 0.0;
  double r_bar = 0.0;
  Phase phase = Phase::free;
  int collisions = 0;
};

struct KappaAggregate {
  double v_mean = 0.0;
  double v_std = 0.0;
  double r_mean = 0.0;
  double r_std = 0.0;
  int count = 0;
};

// Monte Carlo scan of the CAV ideal speed.
struct SweepResult {
  int n = 0;
  int cav_count = 0;
  std::vector<double> kappa_grid;             // strictly ascending
  std::vector<std::vector<SweepCell>> cells;  // [kappa][seed]
  std::vector<KappaAggregate> aggregates;     // per kappa

  void recompute_aggregates();
};

// Evenly spaced 1-based CAV indices {1 + round((k-1)*N/M)}, deduplicated.
std::vector<int> place_cavs(int n, int m);

// Runs every (kappa, seed) cell with the fleet heterogeneity frozen once
// (base.heterogeneity_seed) and noise seeds base.noise_seed + s. Cells run
// in parallel on up to `jobs` threads; the result is identical for any job
// count. CAVs are placed by place_cavs(base.n, cav_count).
SweepResult sweep_kappa(const EpisodeConfig& base, int cav_count,
                        std::span<const double> kappa_grid, int seeds_per_kappa,
                        int jobs = 0);

// Local linear regression with a tricube kernel; fitted values are clamped
// to the range of the in-bandwidth data.
class LocalLinearFit {
 public:
  LocalLinearFit() = default;
  LocalLinearFit(std::vector<double> xs, std::vector<double> ys, double bandwidth);

  // Throws std::domain_error outside [domain_lo, domain_hi].
  double operator()(double x) const;

  double domain_lo() const { return xs_.empty() ? 0.0 : xs_.front(); }
  double domain_hi() const { return xs_.empty() ? 0.0 : xs_.back(); }
  double bandwidth() const { return bandwidth_; }
  double residual_rms() const { return residual_rms_; }

 private:
  std::vector<double> xs_;  // ascending
  std::vector<double> ys_;
  double bandwidth_ = 0.0;
  double residual_rms_ = 0.0;
};

// Smooth response functions kappa -> V_bar and kappa -> R_bar.
struct ResponseCurves {
  LocalLinearFit v_fit;
  LocalLinearFit r_fit;
  int n = 0;
  int cav_count = 0;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
};

// Fits both curves to the per-kappa means. Requires >= 5 distinct kappas.
ResponseCurves fit_response_curves(const SweepResult& sweep, double bandwidth = 0.5);

// V_fit(kappa) - omega * R_fit(kappa).
double objective(const ResponseCurves& curves, double kappa, double omega);

struct ControlPolicy {
  double omega = 0.0;
  double kappa_star = 0.0;  // [m/s]
  double v_bar = 0.0;       // fitted value at kappa_star
  double r_bar = 0.0;
  int n = 0;
  int cav_count = 0;
};

// Dense-grid argmax of the objective; ties break toward larger kappa.
ControlPolicy optimize_kappa(const ResponseCurves& curves, double omega,
                             double grid_step = 0.01);

// One optimal policy per omega, in omega order.
std::vector<ControlPolicy> efficient_frontier(const ResponseCurves& curves,
                                              std::span<const double> omega_grid);

struct ImprovementReport {
  double v_change_pct = 0.0;  // positive = faster
  double r_change_pct = 0.0;  // negative = smoother
};

// Percentage change of the policy's achieved values vs an uncontrolled
// baseline. Throws std::invalid_argument when the baseline v_bar is 0.
ImprovementReport improvement_report(const ControlPolicy& policy, const EpisodeStats& baseline);

}  // namespace ringsim
