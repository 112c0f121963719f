#pragma once

#include "umedest/distribution.hpp"
#include "umedest/family.hpp"
#include "umedest/umedian.hpp"

namespace umedest {

// Scalar root-search configuration. The numeric bounds clamp the bracket
// search inside the family's open theoretical range; the defaults suit the
// Poisson family.
struct SolverOptions {
  double theta_lo = 1e-8;
  double theta_hi = 1e6;
  double residual_tol = 1e-10;
  double bracket_rtol = 1e-12;  // relative bracket width stop
  int max_iterations = 200;
};

struct EstimateResult {
  double theta_hat = 0.0;
  double umed_target = 0.0;  // the uniform median that was matched
  int iterations = 0;
  double residual = 0.0;
};

struct HampelConfig {
  double m = 0.0;            // Huber truncation level, > 0
  double c_tol = 1e-11;      // residual bound for the centering equation
  double theta_rtol = 1e-12; // relative bracket width stop for theta
};

// g(theta) = umed(F_theta); continuous and strictly increasing under A1-A3.
double g(const ParametricFamily& family, double theta);

// Solves g(theta) = target by geometric bracket expansion from an initial
// guess, then bisection (g has kinks where k0(F_theta) jumps, so no
// derivatives are used). Throws SolverError when the target lies outside
// g's range over [theta_lo, theta_hi].
EstimateResult invert_g(const ParametricFamily& family, double target,
                        const SolverOptions& opts = {});

// The minimum-GES estimator as a functional: theta with
// umed(F_theta) = umed(F). Applied to an empirical distribution it is the
// point estimate; applied to a contaminated model it yields asymptotic bias.
EstimateResult estimate_optimal(const IntegerDistribution& dist,
                                const ParametricFamily& family,
                                const SolverOptions& opts = {});

// Half the smaller of the two score gaps adjacent to k0(F_theta); for
// k0 = 0 only the upper gap exists. Hampel estimates with m below this
// threshold coincide with the umed-matching estimator.
double m0(const ParametricFamily& family, double theta);

// The centering constant c(m, theta) solving
//   E_theta[ psi^H_m( psi0(x, theta) - c ) ] = 0,
// by bisection on c (the expectation is continuous and monotone in c).
double hampel_c(const ParametricFamily& family, double m, double theta);

// Hampel-optimal M-estimator: theta solving
//   sum_k p(k) psi^H_m( psi0(k, theta) - c(m, theta) ) = 0
// over the support of `dist` (mass at infinity contributes a fully clipped
// score term). The left side is monotone in theta; bisection returns the
// sign-change location, which handles jumps across non-smooth points.
EstimateResult estimate_hampel(const IntegerDistribution& dist,
                               const ParametricFamily& family,
                               const HampelConfig& cfg,
                               const SolverOptions& opts = {});

}  // namespace umedest
