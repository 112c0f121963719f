#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umedest/estimator.hpp"
#include "umedest/family.hpp"

namespace umedest {

struct EstimatorSpec {
  enum class Kind { kOptimal, kMle, kHampel };

  Kind kind = Kind::kOptimal;
  double m = 0.0;  // Huber truncation, hampel only

  // "optimal", "mle", or "hampel:<m>".
  std::string label() const;
  static EstimatorSpec parse(const std::string& text);
};

// One simulation run. Clean cells (eps = 0) are always produced for every
// (estimator, n, lambda); the epsilons list adds replacement-contaminated
// cells over the x0 grid {0, 1, ..., ceil(3*lambda)}.
struct SimulationConfig {
  std::string family = "poisson";
  std::vector<double> lambdas;
  std::vector<int> sample_sizes;
  int replications = 500;
  std::vector<double> epsilons;
  std::string x0_rule = "0..3lambda";
  std::uint64_t master_seed = 20250809;
  std::vector<EstimatorSpec> estimators;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  static SimulationConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct CellKey {
  std::string estimator;
  int n = 0;
  double lambda = 0.0;
  double epsilon = 0.0;    // 0 marks the clean cell
  std::optional<int> x0;   // engaged only when epsilon > 0

  auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
  double mse = 0.0;
  double mean_bias = 0.0;
  double variance = 0.0;  // mse - mean_bias^2
  int replications_used = 0;
  int failed = 0;
};

class SimulationResult {
 public:
  SimulationResult() = default;
  SimulationResult(SimulationConfig config, std::map<CellKey, CellStats> cells)
      : config_(std::move(config)), cells_(std::move(cells)) {}

  const SimulationConfig& config() const { return config_; }
  const std::map<CellKey, CellStats>& cells() const { return cells_; }
  const CellStats* find(const CellKey& key) const;

 private:
  SimulationConfig config_;
  std::map<CellKey, CellStats> cells_;
};

// One (estimator, n, lambda, eps, x0) cell: per replication draw n i.i.d.
// values at lambda, overwrite the first floor(eps*n) with x0, estimate, and
// accumulate (theta_hat - lambda)^2 in replication order.
//
// The base sample of each replication is seeded from
// (master_seed, family, lambda, n, replication) only, so every estimator and
// every contamination variant sees the same draws, and results do not depend
// on scheduling. Solver failures are skipped; more than 1% of them fails the
// cell with a SolverError.
CellStats run_cell(const ParametricFamily& family, double lambda, int n,
                   double eps, std::optional<int> x0,
                   const EstimatorSpec& estimator, int replications,
                   std::uint64_t master_seed);

// Runs all cells of the config, `threads` workers (0 = UMEDEST_THREADS env
// var, else hardware concurrency). Identical configs produce identical
// results for any thread count.
SimulationResult run_simulation(const SimulationConfig& config,
                                int threads = 0);

int resolve_threads(int requested);

struct EfficiencyRow {
  int n = 0;
  double lambda = 0.0;
  double mse_mle = 0.0;
  double mse_optimal = 0.0;
  double efficiency = 0.0;  // mse_mle / mse_optimal on clean cells
};

// Clean-data efficiency of the optimal estimator against the
// maximum-likelihood benchmark. Throws when either clean cell is missing.
double finite_sample_efficiency(const SimulationResult& result, int n,
                                double lambda);
std::vector<EfficiencyRow> efficiency_table(const SimulationResult& result);

struct MaxMseRow {
  std::string estimator;
  int n = 0;
  double epsilon = 0.0;
  double lambda = 0.0;
  double max_mse = 0.0;
  int argmax_x0 = 0;
};

// Per-(estimator, n, eps, lambda) maximum MSE over the x0 grid. Throws when
// grid cells are missing (lists them).
std::vector<MaxMseRow> max_mse_table(const SimulationResult& result);
std::vector<MaxMseRow> max_mse_table(const SimulationResult& result, int n,
                                     double epsilon);

// Byte-stable text outputs: LF line endings, headers, 6 significant digits.
std::string cells_csv(const SimulationResult& result);
std::string efficiency_csv(const SimulationResult& result);
std::string max_mse_csv(const SimulationResult& result);
// Single top-level object with fixed key order
// (config, cells, efficiency, max_mse).
std::string result_json(const SimulationResult& result);

}  // namespace umedest
