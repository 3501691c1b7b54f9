#include "ringsim/behavior.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace ringsim {

void anticipate_into(const DecisionState& state, double u, const AgentParams& params,
                     AnticipatedPath& out) {
  const std::size_t len = static_cast<std::size_t>(params.horizon) + 1;
  out.ego.resize(len);
  out.leader.resize(len);
  out.ego_length = state.ego_length;
  out.leader_length = state.leader_length;
  out.circumference = state.circumference;

  out.ego[0] = state.ego;
  out.leader[0] = state.leader;
  for (std::size_t h = 1; h < len; ++h) {
    const KinematicState& pe = out.ego[h - 1];
    out.ego[h] = {wrap_position(pe.x + pe.v * params.dt, state.circumference),
                  pe.v + pe.a * params.dt, u};
    const KinematicState& pl = out.leader[h - 1];
    out.leader[h] = {wrap_position(pl.x + pl.v * params.dt, state.circumference),
                     pl.v + pl.a * params.dt, 0.0};
  }
}

AnticipatedPath anticipate(const DecisionState& state, double u, const AgentParams& params) {
  AnticipatedPath path;
  anticipate_into(state, u, params, path);
  return path;
}

namespace {

// v-hat_{i,1} + u*dt, the speed argument shared by g1 and g2. Depends only
// on the current element, so perturbing later path entries cannot change it.
inline double first_step_speed(const AnticipatedPath& path, double u, const AgentParams& params) {
  return path.ego[0].v + path.ego[0].a * params.dt + u * params.dt;
}

// Gap and scale of the collision term at anticipated element h.
struct GapScale {
  double dx;
  double delta;
};

inline GapScale collision_gap_scale(const AnticipatedPath& path, std::size_t h, double u,
                                    const AgentParams& params) {
  const KinematicState& e = path.ego[h];
  const KinematicState& l = path.leader[h];
  const double dt = params.dt;
  // positions/speeds one step past element h, then one more dt of lookahead
  const double ev = e.v + e.a * dt;
  const double lv = l.v + l.a * dt;
  const double ego_front = (e.x + e.v * dt) + ev * dt;
  const double leader_rear = (l.x + l.v * dt) + lv * dt;
  const double dx = ring_forward_distance(ego_front, leader_rear, path.circumference) -
                    0.5 * (path.ego_length + path.leader_length);
  const double vv = ev + u * dt;
  const double delta = params.kappa3_c + params.kappa3_v * std::abs(vv) +
                       params.kappa3_d * std::max(vv - lv, 0.0);
  return {dx, delta};
}

}  // namespace

double forward_reward(const AnticipatedPath& path, double u, const AgentParams& params) {
  const double z = (first_step_speed(path, u, params) - params.v_star) /
                   (params.kappa1 * params.v_star);
  return std::exp(-z * z);
}

double backward_penalty(const AnticipatedPath& path, double u, const AgentParams& params) {
  return std::exp(-params.kappa2_v * (first_step_speed(path, u, params) + params.kappa2_0));
}

double collision_risk_at(const AnticipatedPath& path, int h, double u, const AgentParams& params) {
  const GapScale gs = collision_gap_scale(path, static_cast<std::size_t>(h), u, params);
  if (gs.dx <= 0.0) return 1.0;
  const double r = gs.dx / gs.delta;
  return std::exp(-r * r - 2.0 * r);
}

double collision_penalty(const AnticipatedPath& path, double u, const AgentParams& params) {
  // exp(-r^2 - 2r) is strictly decreasing for r >= 0, so the max over h is
  // the value at the smallest gap-to-scale ratio; any overlap saturates at 1.
  double r_min = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < path.ego.size(); ++h) {
    const GapScale gs = collision_gap_scale(path, h, u, params);
    if (gs.dx <= 0.0) return 1.0;
    r_min = std::min(r_min, gs.dx / gs.delta);
  }
  return std::exp(-r_min * r_min - 2.0 * r_min);
}

double effective_utility_on(const AnticipatedPath& path, double u, const AgentParams& params) {
  return params.w1 * forward_reward(path, u, params) +
         params.w2 * backward_penalty(path, u, params) +
         params.w3 * collision_penalty(path, u, params);
}

double effective_utility(const DecisionState& state, double u, const AgentParams& params) {
  assert(u >= params.u_min && u <= params.u_max);
  thread_local AnticipatedPath path;
  anticipate_into(state, u, params, path);
  return effective_utility_on(path, u, params);
}

std::vector<double> action_grid(const AgentParams& params) {
  std::vector<double> grid(static_cast<std::size_t>(params.grid_points));
  const double spacing = (params.u_max - params.u_min) / (params.grid_points - 1);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = params.u_min + spacing * static_cast<double>(k);
  grid.back() = params.u_max;
  return grid;
}

double boltzmann_mean(std::span<const double> utilities, std::span<const double> actions,
                      double lambda) {
  assert(utilities.size() == actions.size() && !utilities.empty());
  double top = -std::numeric_limits<double>::infinity();
  for (double util : utilities) top = std::max(top, lambda * util);
  double weight_sum = 0.0;
  double action_sum = 0.0;
  for (std::size_t k = 0; k < utilities.size(); ++k) {
    const double w = std::exp(lambda * utilities[k] - top);
    weight_sum += w;
    action_sum += actions[k] * w;
  }
  return action_sum / weight_sum;
}

double boltzmann_action(const DecisionState& state, const AgentParams& params) {
  thread_local AnticipatedPath path;
  thread_local std::vector<double> actions;
  thread_local std::vector<double> utilities;

  actions.resize(static_cast<std::size_t>(params.grid_points));
  utilities.resize(actions.size());
  const double spacing = (params.u_max - params.u_min) / (params.grid_points - 1);
  for (std::size_t k = 0; k < actions.size(); ++k)
    actions[k] = params.u_min + spacing * static_cast<double>(k);
  actions.back() = params.u_max;

  for (std::size_t k = 0; k < actions.size(); ++k) {
    anticipate_into(state, actions[k], params, path);
    utilities[k] = effective_utility_on(path, actions[k], params);
  }
  return boltzmann_mean(utilities, actions, params.lambda);
}

}  // namespace ringsim
