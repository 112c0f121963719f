#include "umedest/umedian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "umedest/errors.hpp"

namespace umedest {

double huber_clip(double x, double m) { return std::clamp(x, -m, m); }

int k0(const IntegerDistribution& dist) {
  const int ub = dist.upper_bound();
  for (int k = 0; k <= ub; ++k) {
    if (dist.cdf(k) >= 0.5) return k;
  }
  throw InternalError("k0: cdf never reaches 0.5 within the evaluation bound (" +
                      std::to_string(dist.cdf(ub)) + " at k = " +
                      std::to_string(ub) + ")");
}

UmedResult umed(const IntegerDistribution& dist) {
  UmedResult r;
  r.k0 = k0(dist);
  r.p0 = dist.pmf(r.k0);
  if (!(r.p0 > 0.0)) {
    throw InternalError("umed: pmf(k0) = 0 at k0 = " + std::to_string(r.k0));
  }
  const double f_prev = r.k0 >= 1 ? dist.cdf(r.k0 - 1) : 0.0;
  r.value = r.k0 - 0.5 + (0.5 - f_prev) / r.p0;
  r.boundary = std::abs(dist.cdf(r.k0) - 0.5) < kBoundaryTol;
  return r;
}

double umed_oracle(const IntegerDistribution& dist) {
  // Cdf of x + u: on [j - 0.5, j + 0.5] it climbs linearly from F(j-1) to F(j).
  const auto g = [&dist](double t) {
    const int j = static_cast<int>(std::floor(t + 0.5));
    const double f_prev = j >= 1 ? dist.cdf(j - 1) : 0.0;
    return f_prev + dist.pmf(j) * (t - j + 0.5);
  };
  double lo = -0.5;
  double hi = dist.upper_bound() + 0.5;
  if (g(hi) < 0.5) {
    throw InternalError("umed_oracle: cdf of x+u never reaches 0.5");
  }
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace umedest
