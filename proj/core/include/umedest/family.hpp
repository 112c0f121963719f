#pragma once

#include <memory>
#include <string_view>

#include "umedest/distribution.hpp"

namespace umedest {

// One-parameter family F_theta on the nonnegative integers, stochastically
// increasing in theta (F_theta(k) decreasing in theta for every k), with a
// score function psi0(k, theta) = d/dtheta log p(k, theta) that is strictly
// monotone in k.
//
// The parameter range (theta_min, theta_max) is an open interval; callers
// must not evaluate at its endpoints.
class ParametricFamily {
 public:
  virtual ~ParametricFamily() = default;

  virtual std::string_view name() const = 0;
  virtual double theta_min() const = 0;
  virtual double theta_max() const = 0;

  virtual std::shared_ptr<const IntegerDistribution> at(double theta) const = 0;
  virtual double score(int k, double theta) const = 0;
  // I(theta) = E_theta[psi0^2].
  virtual double fisher_information(double theta) const = 0;

  bool contains(double theta) const {
    return theta > theta_min() && theta < theta_max();
  }
  // Throws std::invalid_argument when theta is outside the open range.
  void require_in_range(double theta) const;
};

// theta = lambda in (0, inf); psi0(k, lambda) = k/lambda - 1; I = 1/lambda.
class PoissonFamily final : public ParametricFamily {
 public:
  std::string_view name() const override { return "poisson"; }
  double theta_min() const override { return 0.0; }
  double theta_max() const override;

  std::shared_ptr<const IntegerDistribution> at(double theta) const override;
  double score(int k, double theta) const override;
  double fisher_information(double theta) const override;
};

}  // namespace umedest
