#pragma once

#include <span>
#include <vector>

#include "ringsim/kinematics.hpp"
#include "ringsim/params.hpp"

namespace ringsim {

// Everything one driver sees when deciding: its own kinematics and the
// vehicle immediately ahead under the ring ordering.
struct DecisionState {
  KinematicState ego;
  KinematicState leader;
  double ego_length = 3.9;     // [m]
  double leader_length = 3.9;  // [m]
  double circumference = 314.0;
};

// Mental rollout of the next H steps: element 0 is the current state, the
// ego continues with constant action u, the leader with zero action.
struct AnticipatedPath {
  std::vector<KinematicState> ego;     // H+1 entries
  std::vector<KinematicState> leader;  // H+1 entries
  double ego_length = 0.0;
  double leader_length = 0.0;
  double circumference = 0.0;
};

AnticipatedPath anticipate(const DecisionState& state, double u, const AgentParams& params);

// In-place variant; reuses the vectors of `out` across calls.
void anticipate_into(const DecisionState& state, double u, const AgentParams& params,
                     AnticipatedPath& out);

// Reward for moving at the ideal speed, evaluated at the first anticipated
// element only. In (0, 1], peaking at 1 when the next-step speed equals v*.
double forward_reward(const AnticipatedPath& path, double u, const AgentParams& params);

// Penalty for moving backward, first anticipated element only.
double backward_penalty(const AnticipatedPath& path, double u, const AgentParams& params);

// Perceived front-collision risk at anticipated element h: 1 inside the
// overlap, exp(-r^2 - 2r) of the gap-to-scale ratio r outside.
double collision_risk_at(const AnticipatedPath& path, int h, double u, const AgentParams& params);

// Maximum of collision_risk_at over the whole anticipated path.
double collision_penalty(const AnticipatedPath& path, double u, const AgentParams& params);

// w1*g1 + w2*g2 + w3*g3 on the given rollout.
double effective_utility_on(const AnticipatedPath& path, double u, const AgentParams& params);

// Same, seeding the rollout at the current decision state.
double effective_utility(const DecisionState& state, double u, const AgentParams& params);

// The evenly spaced action grid over [u_min, u_max], inclusive of both ends.
std::vector<double> action_grid(const AgentParams& params);

// Boltzmann-weighted mean of `actions` with weights exp(lambda * utility),
// computed with max-subtraction. Always normalizable.
double boltzmann_mean(std::span<const double> utilities, std::span<const double> actions,
                      double lambda);

// The driving policy: grid-enumerated effective utilities pushed through the
// Boltzmann average. Pure; result lies in [u_min, u_max].
double boltzmann_action(const DecisionState& state, const AgentParams& params);

}  // namespace ringsim
