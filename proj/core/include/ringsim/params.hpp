#pragma once

namespace ringsim {

// Per-driver preference, noise and policy parameters. Defaults are the
// calibrated fleet averages used throughout the experiments.
struct AgentParams {
  double v_star = 10.49;    // ideal speed [m/s]
  double kappa1 = 0.7;      // forward-reward width
  double w1 = 1.0;          // forward weight
  double kappa2_v = 10.0;   // backward-penalty rate [s/m]
  double kappa2_0 = 0.25;   // backward-penalty offset [m/s]
  double w2 = -1.0;         // backward weight
  double kappa3_c = 0.6;    // collision scale constant [m]
  double kappa3_v = 0.3;    // collision speed scale [s]
  double kappa3_d = 1.0;    // closing-speed scale [s]
  double w3 = -10.0;        // collision weight
  double length = 3.9;      // vehicle length [m]
  double sigma_x = 0.05;    // position noise sd [m]
  double sigma_v = 0.1;     // velocity noise sd [m/s]
  double sigma_a = 0.1;     // acceleration noise sd [m/s^2]
  double gamma = 0.7;       // AR(1) acceleration coefficient
  double lambda = 200.0;    // Boltzmann inverse temperature
  double u_min = -6.0;      // action lower bound [m/s^2]
  double u_max = 4.0;       // action upper bound [m/s^2]
  int grid_points = 41;     // action-grid cardinality
  int horizon = 3;          // anticipation horizon H [steps]
  double dt = 1.0 / 3.0;    // decision period [s]

  // Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

}  // namespace ringsim
