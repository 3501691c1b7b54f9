#include "ringsim/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ringsim/worker_pool.hpp"

namespace ringsim {

std::vector<int> place_cavs(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("place_cavs: need 1 <= m <= n");
  std::vector<int> indices;
  indices.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    const int idx = 1 + static_cast<int>(std::llround(static_cast<double>(k - 1) * n / m));
    indices.push_back(idx);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

void SweepResult::recompute_aggregates() {
  aggregates.assign(kappa_grid.size(), {});
  for (std::size_t k = 0; k < kappa_grid.size(); ++k) {
    const auto& seeds = cells[k];
    KappaAggregate& agg = aggregates[k];
    agg.count = static_cast<int>(seeds.size());
    if (seeds.empty()) continue;
    double v_sum = 0.0;
    double r_sum = 0.0;
    for (const SweepCell& c : seeds) {
      v_sum += c.v_bar;
      r_sum += c.r_bar;
    }
    agg.v_mean = v_sum / agg.count;
    agg.r_mean = r_sum / agg.count;
    if (agg.count > 1) {
      double v_sq = 0.0;
      double r_sq = 0.0;
      for (const SweepCell& c : seeds) {
        v_sq += (c.v_bar - agg.v_mean) * (c.v_bar - agg.v_mean);
        r_sq += (c.r_bar - agg.r_mean) * (c.r_bar - agg.r_mean);
      }
      agg.v_std = std::sqrt(v_sq / (agg.count - 1));
      agg.r_std = std::sqrt(r_sq / (agg.count - 1));
    }
  }
}

SweepResult sweep_kappa(const EpisodeConfig& base, int cav_count,
                        std::span<const double> kappa_grid, int seeds_per_kappa, int jobs) {
  if (kappa_grid.empty()) throw std::invalid_argument("sweep_kappa: empty kappa grid");
  for (std::size_t k = 1; k < kappa_grid.size(); ++k)
    if (kappa_grid[k] <= kappa_grid[k - 1])
      throw std::invalid_argument("sweep_kappa: kappa grid must be strictly ascending");
  if (seeds_per_kappa < 1) throw std::invalid_argument("sweep_kappa: need at least one seed");

  EpisodeConfig proto = base;
  proto.cav_indices = place_cavs(base.n, cav_count);
  proto.kappa = kappa_grid.front();
  proto.validate();

  SweepResult result;
  result.n = base.n;
  result.cav_count = cav_count;
  result.kappa_grid.assign(kappa_grid.begin(), kappa_grid.end());
  result.cells.assign(kappa_grid.size(),
                      std::vector<SweepCell>(static_cast<std::size_t>(seeds_per_kappa)));

  const int total = static_cast<int>(kappa_grid.size()) * seeds_per_kappa;
  parallel_for(total, jobs, [&](int cell) {
    const int k = cell / seeds_per_kappa;
    const int s = cell % seeds_per_kappa;
    EpisodeConfig cfg = proto;
    cfg.kappa = result.kappa_grid[static_cast<std::size_t>(k)];
    cfg.noise_seed = base.noise_seed + static_cast<std::uint64_t>(s);
    const TrajectoryRecord record = run_episode(cfg);
    const EpisodeStats stats = long_run_stats(record);
    result.cells[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] =
        {cfg.noise_seed, stats.v_bar, stats.r_bar, stats.phase, stats.collision_count};
  });

  result.recompute_aggregates();
  return result;
}

LocalLinearFit::LocalLinearFit(std::vector<double> xs, std::vector<double> ys, double bandwidth)
    : xs_(std::move(xs)), ys_(std::move(ys)), bandwidth_(bandwidth) {
  if (xs_.size() != ys_.size() || xs_.size() < 2)
    throw std::invalid_argument("LocalLinearFit: need at least two points");
  if (!std::is_sorted(xs_.begin(), xs_.end()))
    throw std::invalid_argument("LocalLinearFit: xs must be ascending");
  if (bandwidth_ <= 0.0) throw std::invalid_argument("LocalLinearFit: bandwidth must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double resid = (*this)(xs_[i]) - ys_[i];
    sq += resid * resid;
  }
  residual_rms_ = std::sqrt(sq / static_cast<double>(xs_.size()));
}

double LocalLinearFit::operator()(double x) const {
  constexpr double eps = 1e-9;
  if (x < xs_.front() - eps || x > xs_.back() + eps)
    throw std::domain_error("LocalLinearFit: query " + std::to_string(x) +
                            " outside fitted domain");
  x = std::clamp(x, xs_.front(), xs_.back());

  const auto lo = std::lower_bound(xs_.begin(), xs_.end(), x - bandwidth_);
  const auto hi = std::upper_bound(xs_.begin(), xs_.end(), x + bandwidth_);
  const std::size_t first = static_cast<std::size_t>(lo - xs_.begin());
  const std::size_t last = static_cast<std::size_t>(hi - xs_.begin());

  double w_sum = 0.0, wx = 0.0, wy = 0.0;
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < last; ++i) {
    const double t = std::abs(xs_[i] - x) / bandwidth_;
    if (t >= 1.0) continue;
    const double c = 1.0 - t * t * t;
    const double w = c * c * c;  // tricube
    w_sum += w;
    wx += w * xs_[i];
    wy += w * ys_[i];
    y_lo = std::min(y_lo, ys_[i]);
    y_hi = std::max(y_hi, ys_[i]);
  }
  if (!(w_sum > 0.0))
    throw std::runtime_error("LocalLinearFit: no data within bandwidth of query");

  const double x_bar = wx / w_sum;
  const double y_bar = wy / w_sum;
  double sxx = 0.0, sxy = 0.0;
  int distinct = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = first; i < last; ++i) {
    const double t = std::abs(xs_[i] - x) / bandwidth_;
    if (t >= 1.0) continue;
    const double c = 1.0 - t * t * t;
    const double w = c * c * c;
    sxx += w * (xs_[i] - x_bar) * (xs_[i] - x_bar);
    sxy += w * (xs_[i] - x_bar) * (ys_[i] - y_bar);
    if (xs_[i] != prev) {
      ++distinct;
      prev = xs_[i];
    }
  }
  if (distinct < 2)
    throw std::runtime_error("LocalLinearFit: fewer than two distinct points within bandwidth");

  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double value = y_bar + slope * (x - x_bar);
  // keep the smoother inside the local data range (no overshoot at jumps)
  return std::clamp(value, y_lo, y_hi);
}

ResponseCurves fit_response_curves(const SweepResult& sweep, double bandwidth) {
  if (sweep.kappa_grid.size() < 5)
    throw std::invalid_argument("fit_response_curves: need at least 5 kappa values");
  std::vector<double> v_means(sweep.kappa_grid.size());
  std::vector<double> r_means(sweep.kappa_grid.size());
  for (std::size_t k = 0; k < sweep.kappa_grid.size(); ++k) {
    if (sweep.aggregates[k].count < 1)
      throw std::invalid_argument("fit_response_curves: kappa cell without seeds");
    v_means[k] = sweep.aggregates[k].v_mean;
    r_means[k] = sweep.aggregates[k].r_mean;
  }
  ResponseCurves curves;
  curves.v_fit = LocalLinearFit(sweep.kappa_grid, std::move(v_means), bandwidth);
  curves.r_fit = LocalLinearFit(sweep.kappa_grid, std::move(r_means), bandwidth);
  curves.n = sweep.n;
  curves.cav_count = sweep.cav_count;
  curves.domain_lo = sweep.kappa_grid.front();
  curves.domain_hi = sweep.kappa_grid.back();
  return curves;
}

double objective(const ResponseCurves& curves, double kappa, double omega) {
  if (omega < 0.0) throw std::invalid_argument("objective: omega must be non-negative");
  return curves.v_fit(kappa) - omega * curves.r_fit(kappa);
}

ControlPolicy optimize_kappa(const ResponseCurves& curves, double omega, double grid_step) {
  if (grid_step <= 0.0) throw std::invalid_argument("optimize_kappa: grid_step must be positive");
  const double lo = curves.domain_lo;
  const double hi = curves.domain_hi;
  const int count = static_cast<int>(std::floor((hi - lo) / grid_step + 1e-9)) + 1;

  double best_kappa = lo;
  double best_value = -std::numeric_limits<double>::infinity();
  auto consider = [&](double kappa) {
    const double value = objective(curves, kappa, omega);
    if (value >= best_value) {  // ties break toward larger kappa
      best_value = value;
      best_kappa = kappa;
    }
  };
  for (int k = 0; k < count; ++k) consider(std::min(lo + grid_step * k, hi));
  if (lo + grid_step * (count - 1) < hi - 1e-12) consider(hi);

  ControlPolicy policy;
  policy.omega = omega;
  policy.kappa_star = best_kappa;
  policy.v_bar = curves.v_fit(best_kappa);
  policy.r_bar = curves.r_fit(best_kappa);
  policy.n = curves.n;
  policy.cav_count = curves.cav_count;
  return policy;
}

std::vector<ControlPolicy> efficient_frontier(const ResponseCurves& curves,
                                              std::span<const double> omega_grid) {
  for (std::size_t i = 1; i < omega_grid.size(); ++i)
    if (omega_grid[i] < omega_grid[i - 1])
      throw std::invalid_argument("efficient_frontier: omega grid must be ascending");
  std::vector<ControlPolicy> frontier;
  frontier.reserve(omega_grid.size());
  for (double omega : omega_grid) frontier.push_back(optimize_kappa(curves, omega));
  return frontier;
}

ImprovementReport improvement_report(const ControlPolicy& policy, const EpisodeStats& baseline) {
  if (baseline.v_bar == 0.0)
    throw std::invalid_argument("improvement_report: baseline v_bar is zero");
  ImprovementReport report;
  report.v_change_pct = 100.0 * (policy.v_bar - baseline.v_bar) / baseline.v_bar;
  if (baseline.r_bar != 0.0)
    report.r_change_pct = 100.0 * (policy.r_bar - baseline.r_bar) / baseline.r_bar;
  else if (policy.r_bar == 0.0)
    report.r_change_pct = 0.0;
  else
    throw std::invalid_argument("improvement_report: baseline r_bar is zero");
  return report;
}

}  // namespace ringsim
