#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace umedest {

// Mass below which the upper tail of a distribution is truncated: the upper
// evaluation bound is the smallest k with cdf(k) >= 1 - kTailMass.
inline constexpr double kTailMass = 1e-12;

// A probability distribution on the nonnegative integers. Values are
// immutable after construction; concurrent reads are safe.
//
// Sub-distributions are allowed: a contamination point "at infinity" leaves
// mass_at_infinity() of the total off the finite support, in which case
// cdf(upper_bound()) approaches 1 - mass_at_infinity() instead of 1.
class IntegerDistribution {
 public:
  virtual ~IntegerDistribution() = default;

  // P(X = k); 0 for k < 0.
  virtual double pmf(int k) const = 0;
  // P(X <= k); 0 for k < 0, nondecreasing, equals the pmf prefix sum.
  virtual double cdf(int k) const = 0;
  // Smallest k with cdf(k) >= 1 - kTailMass - mass_at_infinity().
  virtual int upper_bound() const = 0;
  virtual double mass_at_infinity() const { return 0.0; }

  // First moment over the finite support, sum k*pmf(k) for k <= upper_bound().
  // Used as a cheap initial guess for parameter solvers.
  double truncated_mean() const;
};

// e^{-lambda} lambda^k / k!, evaluated in log space (saddle-point expansion
// for large k, so the relative error stays near machine precision over the
// whole representable range).
//
// Throws std::invalid_argument for lambda <= 0 or k < 0.
double poisson_pmf(int k, double lambda);
double poisson_log_pmf(int k, double lambda);

class PoissonDistribution final : public IntegerDistribution {
 public:
  explicit PoissonDistribution(double lambda);

  double lambda() const { return lambda_; }
  double pmf(int k) const override;
  double cdf(int k) const override;
  int upper_bound() const override { return static_cast<int>(pmf_.size()) - 1; }

 private:
  double lambda_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

// Counts-based distribution of an observed sample, p_n(k) = #{i: x_i = k}/n.
// Sparse storage: arbitrary large values cost O(distinct), not O(max).
class EmpiricalDistribution final : public IntegerDistribution {
 public:
  // Throws std::invalid_argument on an empty sample or a negative entry
  // (the message names the offending index).
  explicit EmpiricalDistribution(std::span<const int> sample);

  // Pre-tallied form; pairs are (value, count), counts >= 0, total >= 1.
  static EmpiricalDistribution from_counts(
      const std::vector<std::pair<int, std::int64_t>>& counts);

  std::int64_t sample_size() const { return n_; }
  std::int64_t count(int k) const;

  double pmf(int k) const override;
  double cdf(int k) const override;
  int upper_bound() const override { return values_.back(); }

 private:
  EmpiricalDistribution() = default;

  std::vector<int> values_;                 // sorted, distinct
  std::vector<std::int64_t> cum_counts_;    // inclusive prefix sums
  std::int64_t n_ = 0;
};

// Contamination location: a nonnegative integer, or kAtInfinity for the
// limiting point mass beyond all finite support.
using ContaminationPoint = std::optional<int>;
inline constexpr ContaminationPoint kAtInfinity = std::nullopt;

// (1-eps) * base + eps * delta_{x0}. With x0 = kAtInfinity the finite part
// integrates to 1-eps and mass_at_infinity() == eps.
class ContaminatedDistribution final : public IntegerDistribution {
 public:
  ContaminatedDistribution(std::shared_ptr<const IntegerDistribution> base,
                           double eps, ContaminationPoint x0);

  double epsilon() const { return eps_; }
  ContaminationPoint point() const { return x0_; }
  const IntegerDistribution& base() const { return *base_; }

  double pmf(int k) const override;
  double cdf(int k) const override;
  int upper_bound() const override;
  double mass_at_infinity() const override;

 private:
  std::shared_ptr<const IntegerDistribution> base_;
  double eps_;
  ContaminationPoint x0_;
};

// Throws std::invalid_argument unless 0 <= eps < 1 (and x0 >= 0 when finite).
ContaminatedDistribution contaminate(
    std::shared_ptr<const IntegerDistribution> base, double eps,
    ContaminationPoint x0);

}  // namespace umedest
