#include "umedest/distribution.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "umedest/family.hpp"

namespace umedest {
namespace {

// Reference pmf values computed with 50-digit arithmetic.
struct PmfRef {
  int k;
  double lambda;
  double value;
};
constexpr PmfRef kPmfRefs[] = {
    {0, 0.5, 0.60653065971263342},
    {3, 0.5, 0.012636055410679863},
    {12, 0.5, 3.0914045870390547e-13},
    {0, 1.0, 0.36787944117144232},
    {1, 1.0, 0.36787944117144232},
    {5, 5.0, 0.17546736976785071},
    {20, 5.0, 2.641210774925643e-7},
    {40, 5.0, 7.5107394386595138e-23},
    {100, 100.0, 0.039860996809147135},
    {160, 100.0, 7.8903372991406868e-9},
    {900, 1000.0, 7.5169543521259522e-5},
    {1200, 1000.0, 7.9926428488435708e-11},
    {2000, 1000.0, 1.5306205776187485e-170},
};

TEST(PoissonPmf, MatchesHighPrecisionReferences) {
  for (const auto& ref : kPmfRefs) {
    const double p = poisson_pmf(ref.k, ref.lambda);
    EXPECT_NEAR(p / ref.value, 1.0, 1e-12)
        << "k=" << ref.k << " lambda=" << ref.lambda;
  }
}

TEST(PoissonPmf, HalfAtLogTwo) {
  EXPECT_NEAR(poisson_pmf(0, std::log(2.0)), 0.5, 1e-15);
}

TEST(PoissonPmf, AdjacentCellsEqualAtIntegerLambda) {
  // lambda^4/4! == lambda^5/5! at lambda = 5.
  EXPECT_NEAR(poisson_pmf(4, 5.0) / poisson_pmf(5, 5.0), 1.0, 1e-14);
  EXPECT_NEAR(poisson_pmf(5, 5.0), 0.175467, 5e-7);
}

TEST(PoissonPmf, DomainErrors) {
  EXPECT_THROW(poisson_pmf(0, 0.0), std::invalid_argument);
  EXPECT_THROW(poisson_pmf(0, -1.0), std::invalid_argument);
  EXPECT_THROW(poisson_pmf(-1, 1.0), std::invalid_argument);
}

TEST(PoissonDistribution, CdfEqualsPmfPrefixSum) {
  for (const double lambda : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 100.0, 1000.0}) {
    const PoissonDistribution dist(lambda);
    double sum = 0.0;
    double prev = -1.0;
    for (int k = 0; k <= dist.upper_bound(); ++k) {
      sum += dist.pmf(k);
      EXPECT_NEAR(dist.cdf(k), sum, 1e-12) << "lambda=" << lambda << " k=" << k;
      EXPECT_GE(dist.cdf(k), prev);
      prev = dist.cdf(k);
    }
    EXPECT_GE(dist.cdf(dist.upper_bound()), 1.0 - 1e-12) << "lambda=" << lambda;
  }
}

TEST(PoissonDistribution, KnownCdfValues) {
  const PoissonDistribution p5(5.0);
  EXPECT_NEAR(p5.cdf(4), 0.44049328506521241, 1e-14);
  EXPECT_NEAR(p5.cdf(5), 0.61596065483306312, 1e-14);
  const PoissonDistribution p10(10.0);
  EXPECT_NEAR(p10.cdf(9), 0.45792971447185221, 1e-14);
  EXPECT_NEAR(p10.pmf(10), 0.1251100357211333, 1e-14);
  const PoissonDistribution p20(20.0);
  EXPECT_NEAR(p20.cdf(19), 0.47025726683923999, 1e-14);
  EXPECT_NEAR(p20.pmf(20), 0.088835317392085218, 1e-14);
}

TEST(PoissonFamily, ScoreIdentity) {
  const PoissonFamily family;
  for (const double lambda : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const auto dist = family.at(lambda);
    double sum = 0.0;
    for (int k = 0; k <= dist->upper_bound(); ++k) {
      sum += family.score(k, lambda) * dist->pmf(k);
    }
    EXPECT_NEAR(sum, 0.0, 1e-10) << "lambda=" << lambda;
  }
}

TEST(PoissonFamily, StochasticOrdering) {
  const PoissonFamily family;
  const double grid[] = {0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  for (size_t i = 0; i + 1 < std::size(grid); ++i) {
    const auto lo = family.at(grid[i]);
    const auto hi = family.at(grid[i + 1]);
    bool strict = false;
    for (int k = 0; k <= hi->upper_bound(); ++k) {
      EXPECT_GE(lo->cdf(k), hi->cdf(k));
      if (lo->cdf(k) > hi->cdf(k)) strict = true;
    }
    EXPECT_TRUE(strict);
  }
}

TEST(PoissonFamily, FisherInformation) {
  const PoissonFamily family;
  EXPECT_DOUBLE_EQ(family.fisher_information(5.0), 0.2);
  EXPECT_THROW(family.fisher_information(0.0), std::invalid_argument);
  EXPECT_THROW(family.at(-2.0), std::invalid_argument);
}

TEST(Empirical, CountsAndExactDivision) {
  const std::vector<int> a = {0, 1};
  const EmpiricalDistribution ea(a);
  EXPECT_EQ(ea.pmf(0), 0.5);
  EXPECT_EQ(ea.pmf(1), 0.5);
  EXPECT_EQ(ea.cdf(0), 0.5);

  const std::vector<int> b = {5, 5, 5};
  const EmpiricalDistribution eb(b);
  EXPECT_EQ(eb.pmf(5), 1.0);
  EXPECT_EQ(eb.cdf(4), 0.0);
  EXPECT_EQ(eb.upper_bound(), 5);

  const std::vector<int> c = {0, 0, 1, 2};
  const EmpiricalDistribution ec(c);
  EXPECT_EQ(ec.cdf(0), 0.5);
  EXPECT_EQ(ec.cdf(1), 0.75);
  EXPECT_EQ(ec.cdf(2), 1.0);
  EXPECT_EQ(ec.sample_size(), 4);
}

TEST(Empirical, Errors) {
  const std::vector<int> empty;
  EXPECT_THROW(EmpiricalDistribution{empty}, std::invalid_argument);
  const std::vector<int> neg = {3, 1, -2, 0};
  try {
    EmpiricalDistribution dist(neg);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos);
  }
}

TEST(Empirical, FromCountsMatchesSample) {
  const EmpiricalDistribution a =
      EmpiricalDistribution::from_counts({{0, 2}, {1, 1}, {2, 1}});
  const std::vector<int> raw = {0, 0, 1, 2};
  const EmpiricalDistribution b(raw);
  for (int k = 0; k <= 2; ++k) {
    EXPECT_EQ(a.pmf(k), b.pmf(k));
    EXPECT_EQ(a.cdf(k), b.cdf(k));
  }
}

TEST(Contaminate, EpsZeroIsIdentity) {
  const auto base = std::make_shared<PoissonDistribution>(5.0);
  const auto mix = contaminate(base, 0.0, 17);
  for (int k = 0; k <= base->upper_bound(); ++k) {
    EXPECT_EQ(mix.cdf(k), base->cdf(k));
    EXPECT_EQ(mix.pmf(k), base->pmf(k));
  }
}

TEST(Contaminate, AtInfinityScalesCdf) {
  const auto base = std::make_shared<PoissonDistribution>(5.0);
  const auto mix = contaminate(base, 0.1, kAtInfinity);
  EXPECT_NEAR(mix.cdf(5), 0.55436458934975681, 1e-14);
  EXPECT_DOUBLE_EQ(mix.mass_at_infinity(), 0.1);
  for (int k = 0; k <= base->upper_bound(); ++k) {
    EXPECT_EQ(mix.cdf(k), 0.9 * base->cdf(k));
  }
}

TEST(Contaminate, PointMassMixture) {
  const std::vector<int> delta3 = {3};
  const auto base = std::make_shared<EmpiricalDistribution>(delta3);
  const auto mix = contaminate(base, 0.5, 7);
  EXPECT_DOUBLE_EQ(mix.pmf(3), 0.5);
  EXPECT_DOUBLE_EQ(mix.pmf(7), 0.5);
  EXPECT_EQ(mix.upper_bound(), 7);
}

TEST(Contaminate, LinearityExact) {
  const auto base = std::make_shared<PoissonDistribution>(3.0);
  const double eps = 0.25;
  const int x0 = 4;
  const auto mix = contaminate(base, eps, x0);
  for (int k = 0; k <= base->upper_bound(); ++k) {
    const double expected = (1.0 - eps) * base->cdf(k) + (k >= x0 ? eps : 0.0);
    EXPECT_EQ(mix.cdf(k), expected);
  }
}

TEST(Contaminate, DomainErrors) {
  const auto base = std::make_shared<PoissonDistribution>(5.0);
  EXPECT_THROW(contaminate(base, -0.1, 0), std::invalid_argument);
  EXPECT_THROW(contaminate(base, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(contaminate(base, 0.1, -3), std::invalid_argument);
}

}  // namespace
}  // namespace umedest
