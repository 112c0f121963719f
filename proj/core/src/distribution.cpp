#include "umedest/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "umedest/errors.hpp"

namespace umedest {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

// stirlerr(n) = log(n!) - log( sqrt(2*pi*n) * (n/e)^n ).
// Direct log-gamma difference below the series cutoff, asymptotic series
// above it (Loader's scheme, as used by R's dpois).
double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n -
           0.5 * kLogTwoPi;
  }
  const double nn = n * n;
  if (n > 500.0) return (S0 - S1 / nn) / n;
  if (n > 80.0) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35.0) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// bd0(x, np) = x*log(x/np) + np - x, stable when x ~ np.
double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    const double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1;; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

void check_poisson_args(int k, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson: lambda must be a positive real, got " +
                                std::to_string(lambda));
  }
  if (k < 0) {
    throw std::invalid_argument("poisson: k must be nonnegative, got " +
                                std::to_string(k));
  }
}

}  // namespace

double poisson_log_pmf(int k, double lambda) {
  check_poisson_args(k, lambda);
  if (k == 0) return -lambda;
  const double x = static_cast<double>(k);
  return -stirlerr(x) - bd0(x, lambda) - 0.5 * (kLogTwoPi + std::log(x));
}

double poisson_pmf(int k, double lambda) {
  return std::exp(poisson_log_pmf(k, lambda));
}

double IntegerDistribution::truncated_mean() const {
  double sum = 0.0;
  const int ub = upper_bound();
  for (int k = 1; k <= ub; ++k) sum += static_cast<double>(k) * pmf(k);
  return sum;
}

PoissonDistribution::PoissonDistribution(double lambda) : lambda_(lambda) {
  check_poisson_args(0, lambda);
  const int cap =
      static_cast<int>(lambda + 20.0 * std::sqrt(lambda + 1.0) + 200.0);
  pmf_.reserve(64);
  cdf_.reserve(64);
  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation
  for (int k = 0;; ++k) {
    const double p = poisson_pmf(k, lambda_);
    const double y = p - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    pmf_.push_back(p);
    cdf_.push_back(std::min(sum, 1.0));
    if (sum >= 1.0 - kTailMass) break;
    if (k > cap) {
      throw InternalError("poisson cdf did not reach 1 - 1e-12 by k = " +
                          std::to_string(cap));
    }
  }
}

double PoissonDistribution::pmf(int k) const {
  if (k < 0) return 0.0;
  if (k < static_cast<int>(pmf_.size())) return pmf_[static_cast<size_t>(k)];
  return poisson_pmf(k, lambda_);
}

double PoissonDistribution::cdf(int k) const {
  if (k < 0) return 0.0;
  if (k < static_cast<int>(cdf_.size())) return cdf_[static_cast<size_t>(k)];
  return 1.0;
}

EmpiricalDistribution::EmpiricalDistribution(std::span<const int> sample) {
  if (sample.empty()) throw std::invalid_argument("empirical: no data");
  for (size_t i = 0; i < sample.size(); ++i) {
    if (sample[i] < 0) {
      throw std::invalid_argument("empirical: negative value " +
                                  std::to_string(sample[i]) + " at index " +
                                  std::to_string(i));
    }
  }
  std::vector<int> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (values_.empty() || values_.back() != sorted[i]) {
      values_.push_back(sorted[i]);
      cum_counts_.push_back(static_cast<std::int64_t>(i));
    }
    ++cum_counts_.back();
  }
  n_ = static_cast<std::int64_t>(sorted.size());
}

EmpiricalDistribution EmpiricalDistribution::from_counts(
    const std::vector<std::pair<int, std::int64_t>>& counts) {
  std::map<int, std::int64_t> tally;
  for (size_t i = 0; i < counts.size(); ++i) {
    const auto& [value, count] = counts[i];
    if (value < 0) {
      throw std::invalid_argument("empirical: negative value " +
                                  std::to_string(value) + " at index " +
                                  std::to_string(i));
    }
    if (count < 0) {
      throw std::invalid_argument("empirical: negative count at index " +
                                  std::to_string(i));
    }
    if (count > 0) tally[value] += count;
  }
  if (tally.empty()) throw std::invalid_argument("empirical: no data");
  EmpiricalDistribution dist;
  std::int64_t cum = 0;
  for (const auto& [value, count] : tally) {
    dist.values_.push_back(value);
    cum += count;
    dist.cum_counts_.push_back(cum);
  }
  dist.n_ = cum;
  return dist;
}

std::int64_t EmpiricalDistribution::count(int k) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), k);
  if (it == values_.end() || *it != k) return 0;
  const auto i = static_cast<size_t>(it - values_.begin());
  return cum_counts_[i] - (i > 0 ? cum_counts_[i - 1] : 0);
}

double EmpiricalDistribution::pmf(int k) const {
  return static_cast<double>(count(k)) / static_cast<double>(n_);
}

double EmpiricalDistribution::cdf(int k) const {
  if (k < values_.front()) return 0.0;
  // Last stored value <= k.
  const auto it = std::upper_bound(values_.begin(), values_.end(), k);
  const auto i = static_cast<size_t>(it - values_.begin());
  return static_cast<double>(cum_counts_[i - 1]) / static_cast<double>(n_);
}

ContaminatedDistribution::ContaminatedDistribution(
    std::shared_ptr<const IntegerDistribution> base, double eps,
    ContaminationPoint x0)
    : base_(std::move(base)), eps_(eps), x0_(x0) {
  if (!base_) throw std::invalid_argument("contaminate: null base");
  if (!(eps >= 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("contaminate: eps must lie in [0, 1), got " +
                                std::to_string(eps));
  }
  if (x0_.has_value() && *x0_ < 0) {
    throw std::invalid_argument("contaminate: x0 must be nonnegative, got " +
                                std::to_string(*x0_));
  }
}

double ContaminatedDistribution::pmf(int k) const {
  double p = (1.0 - eps_) * base_->pmf(k);
  if (x0_.has_value() && k == *x0_) p += eps_;
  return p;
}

double ContaminatedDistribution::cdf(int k) const {
  double c = (1.0 - eps_) * base_->cdf(k);
  if (x0_.has_value() && k >= *x0_) c += eps_;
  return c;
}

int ContaminatedDistribution::upper_bound() const {
  const int b = base_->upper_bound();
  return x0_.has_value() ? std::max(b, *x0_) : b;
}

double ContaminatedDistribution::mass_at_infinity() const {
  double m = (1.0 - eps_) * base_->mass_at_infinity();
  if (!x0_.has_value()) m += eps_;
  return m;
}

ContaminatedDistribution contaminate(
    std::shared_ptr<const IntegerDistribution> base, double eps,
    ContaminationPoint x0) {
  return ContaminatedDistribution(std::move(base), eps, x0);
}

}  // namespace umedest
