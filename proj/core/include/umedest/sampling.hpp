#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "umedest/distribution.hpp"

namespace umedest {

// SplitMix64 finalizer; the building block of all seed derivation here.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a over raw bytes; used to fold identifiers into seeds.
std::uint64_t fnv1a64(std::string_view bytes);

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);

// Seed of the base-sample stream for one simulation replication. Depends on
// (family, lambda, n, replication) only — contamination variants and the
// different estimators all see the same underlying sample.
std::uint64_t replication_seed(std::uint64_t master_seed,
                               std::string_view family, double lambda, int n,
                               std::uint64_t replication);

// Uniform double in [0, 1) with exactly 53 random bits. mt19937_64 output is
// fully pinned by the standard, so sequences are identical on every platform.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Smallest k with cdf(k) > u; clamps to the upper evaluation bound for u in
// the truncated tail (probability < kTailMass).
int inverse_transform(const IntegerDistribution& dist, double u);

// I.i.d. Poisson draws by inverse transform on the tabulated cdf.
// Draws with u beyond the tabulated tail (probability < kTailMass) clamp to
// the upper evaluation bound.
class PoissonSampler {
 public:
  PoissonSampler(double lambda, std::uint64_t seed);

  int next();
  void fill(std::span<int> out);
  const PoissonDistribution& distribution() const { return *dist_; }

 private:
  std::shared_ptr<const PoissonDistribution> dist_;
  std::mt19937_64 gen_;
};

// Throws std::invalid_argument for n == 0 or lambda <= 0.
std::vector<int> sample_poisson(double lambda, std::size_t n,
                                std::uint64_t seed);

}  // namespace umedest
