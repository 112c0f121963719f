#pragma once

#include "umedest/distribution.hpp"
#include "umedest/family.hpp"

namespace umedest {

// Standard normal cdf.
double normal_cdf(double t);

// Limit law of sqrt(n) * (umed(F_n) - umed(F)), and of the estimator after
// the delta method. Normal in the interior case; in the boundary case
// (F(k0) = 0.5) the two tails are normal with different scales:
//   H(t) = Phi(t / scale_left) for t <= 0,  Phi(t / scale_right) for t > 0.
struct LimitLaw {
  enum class Kind { kInterior, kBoundary };

  Kind kind = Kind::kInterior;
  double variance = 0.0;                         // interior only
  double scale_left = 0.0, scale_right = 0.0;    // boundary only

  double cdf(double t) const;
};

// 0.25/p0^3 * (4*F1*(F1 - 1 + p0) - p0 + 1) with K = k0(F), p0 = p(K),
// F1 = F(K-1). Requires the interior case F(K) > 0.5 strictly; throws
// std::invalid_argument at the boundary.
double sigma2_umed(const IntegerDistribution& dist);

LimitLaw umed_limit_law(const IntegerDistribution& dist);

// dg/dtheta by Richardson-refined central differences with
// h = 1e-6 * (1 + |theta|). Interior case only.
double g_prime(const ParametricFamily& family, double theta);

struct LateralDerivatives {
  double left = 0.0;
  double right = 0.0;
};

// One-sided derivatives of g at a boundary parameter (F_theta(k0) = 0.5),
// from one-sided differences at steps 1e-4, 1e-5, 1e-6 (scaled by 1 + |theta|)
// with Richardson extrapolation of the finer pair.
LateralDerivatives g_lateral(const ParametricFamily& family, double theta);

// Interior: N(0, sigma2_umed / g'(theta)^2). Boundary: two-sided normal with
// scale_left = 1/(2 g'_- p(K)) and scale_right = 1/(2 g'_+ p(K+1)).
LimitLaw estimator_limit_law(const ParametricFamily& family, double theta);

// (1/I(theta)) / (sigma2 / g'(theta)^2): maximum-likelihood asymptotic
// variance over the estimator's asymptotic variance. Interior case only.
double asymptotic_efficiency(const ParametricFamily& family, double theta);

}  // namespace umedest
