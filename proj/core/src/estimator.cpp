#include "umedest/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "umedest/errors.hpp"

namespace umedest {

namespace {

struct Range {
  double lo;
  double hi;
};

// Numeric search bounds clamped inside the family's open range.
Range search_range(const ParametricFamily& family, const SolverOptions& opts) {
  double lo = opts.theta_lo;
  double hi = opts.theta_hi;
  if (std::isfinite(family.theta_min())) {
    lo = std::max(lo, family.theta_min() + 1e-12 * (1.0 + std::abs(family.theta_min())));
  }
  if (std::isfinite(family.theta_max())) {
    hi = std::min(hi, family.theta_max() - 1e-12 * (1.0 + std::abs(family.theta_max())));
  }
  if (!(lo < hi)) {
    throw std::invalid_argument("solver bounds [" + std::to_string(opts.theta_lo) +
                                ", " + std::to_string(opts.theta_hi) +
                                "] do not intersect the parameter range");
  }
  return {lo, hi};
}

double centering_constant(const ParametricFamily& family,
                          const IntegerDistribution& model, double m,
                          double theta, double tol) {
  const int ub = model.upper_bound();
  const double s_first = family.score(0, theta);
  const double s_last = family.score(ub, theta);
  const auto h = [&](double c) {
    double sum = 0.0;
    for (int k = 0; k <= ub; ++k) {
      sum += model.pmf(k) * huber_clip(family.score(k, theta) - c, m);
    }
    return sum;
  };
  double a = std::min(s_first, s_last) - m;
  double b = std::max(s_first, s_last) + m;
  const double ha = h(a);
  const double hb = h(b);
  if (!(ha >= 0.0) || !(hb <= 0.0)) {
    throw InternalError("hampel_c: no sign change on [" + std::to_string(a) +
                        ", " + std::to_string(b) + "]");
  }
  double residual = ha;
  while (b - a > 1e-13 * (1.0 + std::abs(a)) && residual != 0.0) {
    const double mid = 0.5 * (a + b);
    residual = h(mid);
    if (residual > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double c = 0.5 * (a + b);
  if (std::abs(h(c)) > tol) {
    // A flat stretch of the piecewise-linear expectation can only sit at
    // height 0, so this indicates a broken bracket rather than slack.
    throw InternalError("hampel_c: residual " + std::to_string(h(c)) +
                        " above tolerance");
  }
  return c;
}

}  // namespace

double g(const ParametricFamily& family, double theta) {
  const auto dist = family.at(theta);
  return umed(*dist).value;
}

EstimateResult invert_g(const ParametricFamily& family, double target,
                        const SolverOptions& opts) {
  const auto [lo, hi] = search_range(family, opts);
  const double guess = std::clamp(target, lo, hi);
  double a = std::max(lo, 0.5 * guess);
  double b = std::min(hi, std::max(2.0 * guess, 2.0 * a));
  int iters = 0;

  double ga = g(family, a);
  ++iters;
  while (ga > target) {
    if (a <= lo) {
      throw SolverError("estimate: umed target " + std::to_string(target) +
                        " below the family's range (inf g = " +
                        std::to_string(ga) + " at theta = " + std::to_string(a) +
                        ")");
    }
    a = std::max(lo, 0.5 * a);
    ga = g(family, a);
    ++iters;
  }
  double gb = g(family, b);
  ++iters;
  while (gb < target) {
    if (b >= hi) {
      throw SolverError("estimate: umed target " + std::to_string(target) +
                        " above the family's range (sup g = " +
                        std::to_string(gb) + " at theta = " + std::to_string(b) +
                        ")");
    }
    b = std::min(hi, 2.0 * b);
    gb = g(family, b);
    ++iters;
  }

  double mid = 0.5 * (a + b);
  while (iters < opts.max_iterations) {
    mid = 0.5 * (a + b);
    const double gm = g(family, mid);
    ++iters;
    if (gm < target) {
      a = mid;
    } else {
      b = mid;
    }
    if (b - a < opts.bracket_rtol * (1.0 + std::abs(mid))) break;
  }

  EstimateResult r;
  r.theta_hat = 0.5 * (a + b);
  r.umed_target = target;
  r.iterations = iters;
  r.residual = std::abs(g(family, r.theta_hat) - target);
  return r;
}

EstimateResult estimate_optimal(const IntegerDistribution& dist,
                                const ParametricFamily& family,
                                const SolverOptions& opts) {
  return invert_g(family, umed(dist).value, opts);
}

double m0(const ParametricFamily& family, double theta) {
  family.require_in_range(theta);
  const auto dist = family.at(theta);
  const int kk = k0(*dist);
  const double gap_up = family.score(kk + 1, theta) - family.score(kk, theta);
  double gap_down = gap_up;
  if (kk >= 1) gap_down = family.score(kk, theta) - family.score(kk - 1, theta);
  if (gap_up == 0.0 || gap_down == 0.0 || (gap_up > 0.0) != (gap_down > 0.0)) {
    throw std::invalid_argument("m0: score not strictly monotone around k0 = " +
                                std::to_string(kk));
  }
  return 0.5 * std::min(std::abs(gap_up), std::abs(gap_down));
}

double hampel_c(const ParametricFamily& family, double m, double theta) {
  if (!(m > 0.0)) throw std::invalid_argument("hampel_c: m must be positive");
  family.require_in_range(theta);
  const auto model = family.at(theta);
  return centering_constant(family, *model, m, theta, 1e-11);
}

EstimateResult estimate_hampel(const IntegerDistribution& dist,
                               const ParametricFamily& family,
                               const HampelConfig& cfg,
                               const SolverOptions& opts) {
  if (!(cfg.m > 0.0)) {
    throw std::invalid_argument("estimate_hampel: m must be positive");
  }
  const auto [lo, hi] = search_range(family, opts);
  const double m = cfg.m;

  // Sample estimating function; nonincreasing in theta for stochastically
  // increasing families. Mass at infinity carries the clipped score of an
  // arbitrarily large observation. The magnitude sum classifies exact zeros:
  // samples with F_n(K-1) = 0.5 and p_n(K) = 0 zero the equation identically
  // over a whole k0*(theta) = K cell, up to rounding dust proportional to
  // the term magnitudes.
  struct FnValue {
    double value;
    double magnitude;
  };
  const auto estimating_fn = [&](double theta) {
    const auto model = family.at(theta);
    const double c = centering_constant(family, *model, m, theta, cfg.c_tol);
    double sum = 0.0;
    double mag = 0.0;
    const int ub = dist.upper_bound();
    for (int k = 0; k <= ub; ++k) {
      const double p = dist.pmf(k);
      if (p > 0.0) {
        const double term = p * huber_clip(family.score(k, theta) - c, m);
        sum += term;
        mag += std::abs(term);
      }
    }
    const double inf_mass = dist.mass_at_infinity();
    if (inf_mass > 0.0) {
      const bool increasing = family.score(1, theta) > family.score(0, theta);
      sum += inf_mass * (increasing ? m : -m);
      mag += inf_mass * m;
    }
    return FnValue{sum, mag};
  };
  const auto is_positive = [](const FnValue& f) {
    return f.value > 1e-12 * f.magnitude;
  };
  const auto is_negative = [](const FnValue& f) {
    return f.value < -1e-12 * f.magnitude;
  };

  const double guess = std::clamp(dist.truncated_mean(), lo, hi);
  double a = std::max(lo, 0.5 * guess);
  double b = std::min(hi, std::max(2.0 * guess, 2.0 * a));
  int iters = 0;

  // When the root set is an interval, its left endpoint is the umed-matching
  // solution; zeros are kept on the b side so bisection converges to the
  // infimum of the root set.
  FnValue fa = estimating_fn(a);
  ++iters;
  while (!is_positive(fa)) {
    if (a <= lo) {
      if (!is_negative(fa)) break;  // root pinned at the numeric lower bound
      throw SolverError("estimate_hampel: estimating equation has no root in "
                        "range (negative at theta = " + std::to_string(a) + ")");
    }
    a = std::max(lo, 0.5 * a);
    fa = estimating_fn(a);
    ++iters;
  }
  FnValue fb = estimating_fn(b);
  ++iters;
  while (is_positive(fb)) {
    if (b >= hi) {
      throw SolverError("estimate_hampel: estimating equation has no root in "
                        "range (positive at theta = " + std::to_string(b) + ")");
    }
    b = std::min(hi, 2.0 * b);
    fb = estimating_fn(b);
    ++iters;
  }

  double mid = 0.5 * (a + b);
  while (iters < opts.max_iterations) {
    mid = 0.5 * (a + b);
    const FnValue fm = estimating_fn(mid);
    ++iters;
    if (is_positive(fm)) {
      a = mid;
    } else {
      b = mid;
    }
    if (b - a < cfg.theta_rtol * (1.0 + std::abs(mid))) break;
  }

  EstimateResult r;
  r.theta_hat = 0.5 * (a + b);
  r.umed_target = umed(dist).value;
  r.iterations = iters;
  r.residual = std::abs(estimating_fn(r.theta_hat).value);
  return r;
}

}  // namespace umedest
