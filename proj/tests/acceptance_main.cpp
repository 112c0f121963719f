// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Reference table values are compared at the stated
// tolerances; all randomness is driven by fixed master seeds, so the outcome
// is reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "random_distributions.hpp"
#include "umedest/umedest.hpp"

namespace {

using namespace umedest;

const PoissonFamily kFamily;
int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d %s: %s%s%s\n", index, pass ? "PASS" : "FAIL", name,
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) { return fmt_g6(v); }

// 1. Reference max-bias table, +-0.01.
void criterion_1() {
  const struct {
    double eps, lambda, expected;
  } cells[] = {
      {0.1, 5.0, 0.329}, {0.1, 10.0, 0.511}, {0.1, 20.0, 0.823},
      {0.2, 5.0, 0.805}, {0.2, 10.0, 1.052}, {0.2, 20.0, 1.569},
  };
  bool pass = true;
  std::string detail;
  for (const auto& cell : cells) {
    const double computed = max_bias(kFamily, cell.lambda, cell.eps).bias;
    const bool ok = std::abs(computed - cell.expected) <= 0.01;
    pass = pass && ok;
    detail += " (eps=" + fmt(cell.eps) + ",lambda=" + fmt(cell.lambda) +
              ": computed " + fmt(computed) + " vs " + fmt(cell.expected) +
              (ok ? " ok)" : " OUT)");
  }
  report(1, "max bias table, six cells within +-0.01", pass, detail);
}

// 2. Reference asymptotic-efficiency values, +-0.02.
void criterion_2() {
  const struct {
    double lambda, expected;
  } rows[] = {{5.0, 0.72}, {10.0, 0.69}, {20.0, 0.67}};
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    const double eff = asymptotic_efficiency(kFamily, row.lambda);
    const bool ok = std::abs(eff - row.expected) <= 0.02;
    pass = pass && ok;
    detail += " (lambda=" + fmt(row.lambda) + ": " + fmt(eff) + " vs " +
              fmt(row.expected) + (ok ? " ok)" : " OUT)");
  }
  report(2, "asymptotic efficiency at 5/10/20 within +-0.02", pass, detail);
}

SimulationResult paper_simulation() {
  SimulationConfig cfg;
  cfg.lambdas = {5.0, 10.0, 20.0};
  cfg.sample_sizes = {20, 50};
  cfg.replications = 500;
  cfg.epsilons = {0.1, 0.2};
  cfg.master_seed = 20250809;
  cfg.estimators = {EstimatorSpec::parse("optimal"),
                    EstimatorSpec::parse("mle")};
  return run_simulation(cfg);
}

// 3. Reference finite-sample efficiencies, +-0.06 at 500 replications.
void criterion_3(const SimulationResult& sim) {
  const struct {
    int n;
    double lambda, expected;
  } rows[] = {{20, 5.0, 0.80},  {20, 10.0, 0.64}, {20, 20.0, 0.56},
              {50, 5.0, 0.72},  {50, 10.0, 0.71}, {50, 20.0, 0.66}};
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    const double eff = finite_sample_efficiency(sim, row.n, row.lambda);
    const bool ok = std::abs(eff - row.expected) <= 0.06;
    pass = pass && ok;
    detail += " (n=" + std::to_string(row.n) + ",lambda=" + fmt(row.lambda) +
              ": " + fmt(eff) + " vs " + fmt(row.expected) +
              (ok ? " ok)" : " OUT)");
  }
  report(3, "finite-sample efficiency, six cells within +-0.06", pass, detail);
}

// 4. Reference contaminated max-MSE values, +-20% at 500 replications.
void criterion_4(const SimulationResult& sim) {
  const struct {
    int n;
    double eps, lambda, expected;
  } rows[] = {
      {20, 0.1, 5.0, 0.67},  {20, 0.1, 10.0, 1.14}, {20, 0.1, 20.0, 2.53},
      {20, 0.2, 5.0, 1.22},  {20, 0.2, 10.0, 2.26}, {20, 0.2, 20.0, 4.63},
      {50, 0.1, 5.0, 0.30},  {50, 0.1, 10.0, 0.68}, {50, 0.1, 20.0, 1.40},
      {50, 0.2, 5.0, 0.84},  {50, 0.2, 10.0, 1.61}, {50, 0.2, 20.0, 3.36},
  };
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    double max_mse = -1.0;
    for (const auto& entry : max_mse_table(sim, row.n, row.eps)) {
      if (entry.estimator == "optimal" && entry.lambda == row.lambda) {
        max_mse = entry.max_mse;
      }
    }
    const bool ok = max_mse > 0.0 &&
                    std::abs(max_mse - row.expected) <= 0.2 * row.expected;
    pass = pass && ok;
    detail += " (n=" + std::to_string(row.n) + ",eps=" + fmt(row.eps) +
              ",lambda=" + fmt(row.lambda) + ": " + fmt(max_mse) + " vs " +
              fmt(row.expected) + (ok ? " ok)" : " OUT)");
  }
  report(4, "contaminated max MSE, twelve cells within +-20%", pass, detail);
}

// 5. Hampel/umed equivalence below the m0 threshold, 400 random samples.
void criterion_5() {
  const double lambdas[] = {1.0, 5.0, 10.0, 20.0};
  const int sizes[] = {20, 50, 200};
  bool pass = true;
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double lambda = lambdas[i % 4];
    const int n = sizes[(i / 4) % 3];
    const auto sample = sample_poisson(
        lambda, static_cast<size_t>(n),
        replication_seed(4242ULL, "poisson", lambda, n,
                         static_cast<std::uint64_t>(i)));
    const EmpiricalDistribution emp(sample);
    const double m = m0(kFamily, lambda) / 2.0;
    const double opt = estimate_optimal(emp, kFamily).theta_hat;
    const double ham = estimate_hampel(emp, kFamily, {.m = m}).theta_hat;
    worst = std::max(worst, std::abs(ham - opt));
    if (std::abs(ham - opt) > 1e-8) pass = false;
  }
  report(5, "Hampel(m0/2) equals umed matching within 1e-8 on 400 samples",
         pass, "max |difference| = " + fmt(worst));
}

// 6. n * Var(umed(F_n)) vs the closed-form variance, +-10%.
void criterion_6() {
  bool pass = true;
  std::string detail;
  const int n = 10000;
  const int reps = 2000;
  for (const double lambda : {5.0, 10.0}) {
    const double target = sigma2_umed(PoissonDistribution(lambda));
    std::vector<double> values(reps);
    for (int rep = 0; rep < reps; ++rep) {
      const auto sample = sample_poisson(
          lambda, n,
          replication_seed(333ULL, "poisson", lambda, n,
                           static_cast<std::uint64_t>(rep)));
      values[rep] = umed(EmpiricalDistribution(sample)).value;
    }
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= reps;
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    var /= reps - 1;
    const double ratio = n * var / target;
    const bool ok = std::abs(ratio - 1.0) <= 0.10;
    pass = pass && ok;
    detail += " (lambda=" + fmt(lambda) + ": n*Var = " + fmt(n * var) +
              " vs sigma2 = " + fmt(target) + (ok ? " ok)" : " OUT)");
  }
  report(6, "umed sampling variance matches closed form within +-10%", pass,
         detail);
}

// 7. Boundary-case limit law: Kolmogorov distance <= 0.05.
void criterion_7() {
  // Root-solve F_lambda(0) = 0.5.
  double lo = 0.1;
  double hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (PoissonDistribution(mid).cdf(0) > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lstar = 0.5 * (lo + hi);
  const PoissonDistribution model(lstar);
  const LimitLaw law = umed_limit_law(model);
  const double center = umed(model).value;

  const int n = 10000;
  const int reps = 2000;
  std::vector<double> z(reps);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int rep = 0; rep < reps; ++rep) {
    const auto sample = sample_poisson(
        lstar, n,
        replication_seed(474ULL, "poisson", lstar, n,
                         static_cast<std::uint64_t>(rep)));
    z[rep] = root_n * (umed(EmpiricalDistribution(sample)).value - center);
  }
  std::sort(z.begin(), z.end());
  double ks = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double h = law.cdf(z[i]);
    ks = std::max(ks, std::abs(h - static_cast<double>(i + 1) / reps));
    ks = std::max(ks, std::abs(h - static_cast<double>(i) / reps));
  }
  const bool pass = ks <= 0.05;
  report(7, "boundary limit law within Kolmogorov distance 0.05", pass,
         "lambda* = " + fmt(lstar) + ", scales (" + fmt(law.scale_left) + ", " +
             fmt(law.scale_right) + "), KS = " + fmt(ks));
}

// 8. Strong consistency proxy: |theta_hat - lambda| < 0.05 in >= 95/100 runs
// at n = 1e5.
void criterion_8() {
  bool pass = true;
  std::string detail;
  const int n = 100000;
  for (const double lambda : {5.0, 10.0, 20.0}) {
    int hits = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const auto sample = sample_poisson(
          lambda, n,
          replication_seed(888ULL, "poisson", lambda, n,
                           static_cast<std::uint64_t>(rep)));
      const double theta =
          estimate_optimal(EmpiricalDistribution(sample), kFamily).theta_hat;
      if (std::abs(theta - lambda) < 0.05) ++hits;
    }
    const bool ok = hits >= 95;
    pass = pass && ok;
    detail += " (lambda=" + fmt(lambda) + ": " + std::to_string(hits) +
              "/100" + (ok ? " ok)" : " OUT)");
  }
  report(8, "consistency at n = 1e5, >= 95/100 within 0.05", pass, detail);
}

// 9. umed formula vs the x+u oracle over 200 randomized distributions.
void criterion_9() {
  testing::RandomDistributions dists(20250809ULL);
  bool pass = true;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto dist = dists.next(i);
    const double diff =
        std::abs(umed(*dist).value - umed_oracle(*dist));
    worst = std::max(worst, diff);
    if (diff > 1e-9) pass = false;
  }
  report(9, "umed formula vs x+u oracle within 1e-9 on 200 distributions",
         pass, "max |difference| = " + fmt(worst));
}

// 10. Bit-identical simulation outputs across runs and thread counts.
void criterion_10() {
  SimulationConfig cfg;
  cfg.lambdas = {5.0, 10.0};
  cfg.sample_sizes = {20};
  cfg.replications = 100;
  cfg.epsilons = {0.1};
  cfg.master_seed = 99;
  cfg.estimators = {EstimatorSpec::parse("optimal"),
                    EstimatorSpec::parse("mle"),
                    EstimatorSpec::parse("hampel:0.05")};
  const SimulationResult a = run_simulation(cfg, 1);
  const SimulationResult b = run_simulation(cfg, 1);
  const SimulationResult c = run_simulation(cfg, 4);
  const bool pass = cells_csv(a) == cells_csv(b) &&
                    cells_csv(a) == cells_csv(c) &&
                    result_json(a) == result_json(c) &&
                    efficiency_csv(a) == efficiency_csv(c) &&
                    max_mse_csv(a) == max_mse_csv(c);
  report(10, "simulation outputs byte-identical across runs and threads", pass,
         pass ? "1-thread and 4-thread runs agree" : "outputs differ");
}

}  // namespace

int main() {
  std::printf("umedest acceptance suite\n");
  criterion_1();
  criterion_2();
  const SimulationResult sim = paper_simulation();
  criterion_3(sim);
  criterion_4(sim);
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
