#include "umedest/sampling.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace umedest {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ mix64(v));
}

std::uint64_t replication_seed(std::uint64_t master_seed,
                               std::string_view family, double lambda, int n,
                               std::uint64_t replication) {
  std::uint64_t h = fnv1a64(family);
  h = hash_combine(h, std::bit_cast<std::uint64_t>(lambda));
  h = hash_combine(h, static_cast<std::uint64_t>(n));
  h = hash_combine(h, replication);
  return hash_combine(master_seed, h);
}

int inverse_transform(const IntegerDistribution& dist, double u) {
  const int ub = dist.upper_bound();
  if (u >= dist.cdf(ub)) return ub;
  int lo = 0;
  int hi = ub;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (dist.cdf(mid) > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

PoissonSampler::PoissonSampler(double lambda, std::uint64_t seed)
    : dist_(std::make_shared<PoissonDistribution>(lambda)), gen_(seed) {}

int PoissonSampler::next() { return inverse_transform(*dist_, uniform01(gen_)); }

void PoissonSampler::fill(std::span<int> out) {
  for (int& x : out) x = next();
}

std::vector<int> sample_poisson(double lambda, std::size_t n,
                                std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_poisson: n must be >= 1");
  PoissonSampler sampler(lambda, seed);
  std::vector<int> out(n);
  sampler.fill(out);
  return out;
}

}  // namespace umedest
