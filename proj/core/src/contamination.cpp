#include "umedest/contamination.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace umedest {

BiasRecord asymptotic_bias(const ParametricFamily& family, double theta,
                           double eps, ContaminationPoint x0,
                           const SolverOptions& opts) {
  if (!(eps >= 0.0) || !(eps < 0.5)) {
    throw std::invalid_argument("asymptotic_bias: eps must lie in [0, 0.5), got " +
                                std::to_string(eps));
  }
  family.require_in_range(theta);
  const auto mixture = std::make_shared<ContaminatedDistribution>(
      contaminate(family.at(theta), eps, x0));
  const EstimateResult est = estimate_optimal(*mixture, family, opts);
  return {x0, est.theta_hat, std::abs(est.theta_hat - theta)};
}

MaxBiasResult max_bias(const ParametricFamily& family, double theta,
                       double eps, const SolverOptions& opts) {
  MaxBiasResult result;
  const int x0_max = static_cast<int>(std::ceil(3.0 * theta));
  result.grid.reserve(static_cast<size_t>(x0_max) + 1);
  ContaminationPoint grid_argmax = 0;
  for (int x0 = 0; x0 <= x0_max; ++x0) {
    BiasRecord rec = asymptotic_bias(family, theta, eps, x0, opts);
    if (rec.bias > result.grid_max) {
      result.grid_max = rec.bias;
      grid_argmax = x0;
    }
    result.grid.push_back(std::move(rec));
  }
  result.at_infinity =
      asymptotic_bias(family, theta, eps, kAtInfinity, opts).bias;
  if (result.at_infinity >= result.grid_max - 1e-12) {
    result.bias = std::max(result.at_infinity, result.grid_max);
    result.argmax = kAtInfinity;
  } else {
    result.bias = result.grid_max;
    result.argmax = grid_argmax;
  }
  return result;
}

double ges_numeric(const ParametricFamily& family, double theta, double eps,
                   const SolverOptions& opts) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("ges_numeric: eps must be positive");
  }
  return max_bias(family, theta, eps, opts).bias / eps;
}

}  // namespace umedest
