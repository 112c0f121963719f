#pragma once

// Randomized integer-supported distributions for property tests: random
// finite pmfs, a Poisson grid, and contaminated Poisson mixtures.

#include <memory>
#include <random>
#include <vector>

#include "umedest/distribution.hpp"

namespace umedest::testing {

class RandomDistributions {
 public:
  explicit RandomDistributions(std::uint64_t seed) : gen_(seed) {}

  std::shared_ptr<const IntegerDistribution> next(int index) {
    switch (index % 3) {
      case 0:
        return random_finite();
      case 1:
        return poisson_grid(index);
      default:
        return contaminated(index);
    }
  }

 private:
  std::shared_ptr<const IntegerDistribution> random_finite() {
    std::uniform_int_distribution<int> len_dist(1, 30);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    const int len = len_dist(gen_);
    std::vector<std::pair<int, std::int64_t>> counts;
    int value = 0;
    std::uniform_int_distribution<int> gap(1, 4);
    for (int i = 0; i < len; ++i) {
      counts.emplace_back(value,
                          static_cast<std::int64_t>(weight(gen_) * 1000) + 1);
      value += gap(gen_);
    }
    return std::make_shared<EmpiricalDistribution>(
        EmpiricalDistribution::from_counts(counts));
  }

  std::shared_ptr<const IntegerDistribution> poisson_grid(int index) {
    static constexpr double kGrid[] = {0.2, 0.5, 0.69314718055994531, 1.0,
                                       2.0, 3.7, 5.0, 8.5, 10.0, 20.0, 47.0};
    return std::make_shared<PoissonDistribution>(
        kGrid[static_cast<size_t>(index / 3) % std::size(kGrid)]);
  }

  std::shared_ptr<const IntegerDistribution> contaminated(int index) {
    std::uniform_real_distribution<double> lambda_dist(0.3, 25.0);
    std::uniform_real_distribution<double> eps_dist(0.0, 0.4);
    const double lambda = lambda_dist(gen_);
    const double eps = eps_dist(gen_);
    ContaminationPoint x0;
    if (index % 2 == 0) {
      std::uniform_int_distribution<int> x0_dist(
          0, static_cast<int>(3.0 * lambda) + 1);
      x0 = x0_dist(gen_);
    } else {
      x0 = kAtInfinity;
    }
    return std::make_shared<ContaminatedDistribution>(
        contaminate(std::make_shared<PoissonDistribution>(lambda), eps, x0));
  }

  std::mt19937_64 gen_;
};

}  // namespace umedest::testing
