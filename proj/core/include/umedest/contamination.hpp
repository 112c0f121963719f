#pragma once

#include <vector>

#include "umedest/estimator.hpp"
#include "umedest/family.hpp"

namespace umedest {

struct BiasRecord {
  ContaminationPoint x0;
  double theta_contaminated = 0.0;
  double bias = 0.0;  // |theta_contaminated - theta|
};

// Asymptotic bias of the umed-matching functional at the contaminated model
// (1-eps) F_theta + eps delta_{x0}. Requires 0 <= eps < 0.5: past that the
// point mass can dominate the median crossing and the matching equation may
// have no solution.
BiasRecord asymptotic_bias(const ParametricFamily& family, double theta,
                           double eps, ContaminationPoint x0,
                           const SolverOptions& opts = {});

struct MaxBiasResult {
  double bias = 0.0;              // max over the grid and the infinity limit
  ContaminationPoint argmax;      // kAtInfinity when the limit attains the max
  double grid_max = 0.0;          // max over x0 in {0, ..., ceil(3*theta)}
  double at_infinity = 0.0;       // bias of the x0 -> infinity limit
  std::vector<BiasRecord> grid;   // per-x0 records, ascending x0
};

// Maximum asymptotic bias over x0 in {0, 1, ..., ceil(3*theta)} plus the
// at-infinity limit (the supremum of upward contamination is attained there,
// so the grid alone would truncate it).
MaxBiasResult max_bias(const ParametricFamily& family, double theta,
                       double eps, const SolverOptions& opts = {});

// Numeric gross-error sensitivity: max over the same x0 set of
// |T((1-eps)F + eps delta_{x0}) - theta| / eps at a small eps.
double ges_numeric(const ParametricFamily& family, double theta,
                   double eps = 1e-4, const SolverOptions& opts = {});

}  // namespace umedest
