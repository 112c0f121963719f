#pragma once

#include "umedest/distribution.hpp"

namespace umedest {

// |F(k0) - 0.5| below this marks the boundary case (diagnostic only; the
// umed value itself is continuous across the boundary).
inline constexpr double kBoundaryTol = 1e-12;

struct UmedResult {
  double value = 0.0;  // always in (k0 - 0.5, k0 + 0.5]
  int k0 = 0;
  double p0 = 0.0;     // pmf at k0, positive by construction of k0
  bool boundary = false;
};

// Smallest k with F(k) >= 0.5 (exact comparison, no tolerance).
// Throws InternalError if the cdf never reaches 0.5 within the evaluation
// bound, which a valid distribution cannot do.
int k0(const IntegerDistribution& dist);

// Uniform median: the median of x + u with x ~ F and u uniform on
// [-0.5, 0.5], computed in closed form as
//   k0(F) - 0.5 + (0.5 - F(k0(F) - 1)) / p(k0(F)),   F(-1) := 0.
UmedResult umed(const IntegerDistribution& dist);

// Independent route to the same quantity: bisection for G(t) = 0.5 on the
// piecewise-linear cdf of x + u. Exists solely to cross-check umed(); the
// estimation code never calls it.
double umed_oracle(const IntegerDistribution& dist);

// Huber score psi_m: x clipped to [-m, m].
double huber_clip(double x, double m);

}  // namespace umedest
