#include "ringsim/params.hpp"

#include <stdexcept>
#include <string>

namespace ringsim {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("AgentParams: ") + what);
}
}  // namespace

void AgentParams::validate() const {
  require(v_star > 0.0, "v_star must be positive");
  require(kappa1 > 0.0, "kappa1 must be positive");
  require(kappa2_v >= 0.0, "kappa2_v must be non-negative");
  require(kappa3_c > 0.0, "kappa3_c must be positive");
  require(kappa3_v >= 0.0 && kappa3_d >= 0.0, "collision scales must be non-negative");
  require(w1 > 0.0, "w1 must be positive");
  require(w2 < 0.0, "w2 must be negative");
  require(w3 < 0.0, "w3 must be negative");
  require(length > 0.0, "length must be positive");
  require(sigma_x >= 0.0 && sigma_v >= 0.0 && sigma_a >= 0.0, "noise sds must be non-negative");
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  require(lambda > 0.0, "lambda must be positive");
  require(u_min < u_max, "u_min must be below u_max");
  require(grid_points >= 2, "grid_points must be at least 2");
  require(horizon >= 0, "horizon must be non-negative");
  require(dt > 0.0, "dt must be positive");
}

}  // namespace ringsim
