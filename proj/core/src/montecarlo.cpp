#include "umedest/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "umedest/errors.hpp"
#include "umedest/format.hpp"
#include "umedest/sampling.hpp"
#include "umedest/umedian.hpp"

namespace umedest {

namespace {

using ordered_json = nlohmann::ordered_json;

// The umed targets of empirical distributions live on a coarse rational
// lattice, so g-inversions repeat heavily across replications and cells;
// caching them is a pure speedup (the solver is a deterministic function of
// the target).
class GInverseCache {
 public:
  double solve(const ParametricFamily& family, double target) {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(target);
    {
      std::lock_guard<std::mutex> lock(mu_);
      const auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    const double theta = invert_g(family, target).theta_hat;
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(key, theta);
    return theta;
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::uint64_t, double> map_;
};

std::string cell_label(const CellKey& key) {
  std::string s = key.estimator + " n=" + std::to_string(key.n) +
                  " lambda=" + fmt_g6(key.lambda) +
                  " eps=" + fmt_g6(key.epsilon);
  if (key.x0.has_value()) s += " x0=" + std::to_string(*key.x0);
  return s;
}

CellStats run_cell_impl(const ParametricFamily& family, const CellKey& key,
                        const EstimatorSpec& estimator, int replications,
                        std::uint64_t master_seed, GInverseCache& cache) {
  const auto model = family.at(key.lambda);
  const int n_replace =
      key.epsilon > 0.0 ? static_cast<int>(std::floor(key.epsilon * key.n)) : 0;

  std::vector<int> sample(static_cast<size_t>(key.n));
  double sum_d = 0.0;
  double sum_d2 = 0.0;
  int failed = 0;
  for (int rep = 0; rep < replications; ++rep) {
    std::mt19937_64 gen(replication_seed(master_seed, family.name(),
                                         key.lambda, key.n,
                                         static_cast<std::uint64_t>(rep)));
    for (int& x : sample) x = inverse_transform(*model, uniform01(gen));
    if (key.x0.has_value()) {
      std::fill(sample.begin(), sample.begin() + n_replace, *key.x0);
    }

    double theta = 0.0;
    try {
      switch (estimator.kind) {
        case EstimatorSpec::Kind::kMle: {
          double sum = 0.0;
          for (const int x : sample) sum += x;
          theta = sum / key.n;
          break;
        }
        case EstimatorSpec::Kind::kOptimal: {
          const EmpiricalDistribution emp(sample);
          theta = cache.solve(family, umed(emp).value);
          break;
        }
        case EstimatorSpec::Kind::kHampel: {
          const EmpiricalDistribution emp(sample);
          theta = estimate_hampel(emp, family, {.m = estimator.m}).theta_hat;
          break;
        }
      }
    } catch (const SolverError&) {
      ++failed;
      continue;
    }
    const double d = theta - key.lambda;
    sum_d += d;
    sum_d2 += d * d;
  }

  if (failed * 100 > replications) {
    throw SolverError("cell " + cell_label(key) + ": " +
                      std::to_string(failed) + " of " +
                      std::to_string(replications) + " replications failed");
  }
  CellStats stats;
  stats.replications_used = replications - failed;
  stats.failed = failed;
  stats.mse = sum_d2 / stats.replications_used;
  stats.mean_bias = sum_d / stats.replications_used;
  stats.variance = stats.mse - stats.mean_bias * stats.mean_bias;
  return stats;
}

const EstimatorSpec& spec_for(const std::vector<EstimatorSpec>& specs,
                              const std::string& label) {
  for (const auto& s : specs) {
    if (s.label() == label) return s;
  }
  throw InternalError("unknown estimator label " + label);
}

int x0_grid_max(double lambda) {
  return static_cast<int>(std::ceil(3.0 * lambda));
}

template <typename T>
void require_unique(const std::vector<T>& values, const char* field) {
  std::set<T> seen(values.begin(), values.end());
  if (seen.size() != values.size()) {
    throw std::invalid_argument(std::string(field) + ": duplicate entries");
  }
}

}  // namespace

std::string EstimatorSpec::label() const {
  switch (kind) {
    case Kind::kOptimal:
      return "optimal";
    case Kind::kMle:
      return "mle";
    case Kind::kHampel:
      return "hampel:" + fmt_g6(m);
  }
  return "?";
}

EstimatorSpec EstimatorSpec::parse(const std::string& text) {
  if (text == "optimal") return {Kind::kOptimal, 0.0};
  if (text == "mle") return {Kind::kMle, 0.0};
  if (text.rfind("hampel:", 0) == 0) {
    const std::string arg = text.substr(7);
    size_t pos = 0;
    double m = 0.0;
    try {
      m = std::stod(arg, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != arg.size() || !(m > 0.0)) {
      throw std::invalid_argument("estimator '" + text +
                                  "': expected hampel:<positive m>");
    }
    return {Kind::kHampel, m};
  }
  throw std::invalid_argument("estimator '" + text +
                              "': expected optimal, mle, or hampel:<m>");
}

void SimulationConfig::validate() const {
  if (family != "poisson") {
    throw std::invalid_argument("family: unknown family '" + family + "'");
  }
  if (lambdas.empty()) throw std::invalid_argument("lambdas: must be nonempty");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
      throw std::invalid_argument("lambdas[" + std::to_string(i) +
                                  "]: must be a positive real");
    }
  }
  require_unique(lambdas, "lambdas");
  if (sample_sizes.empty()) {
    throw std::invalid_argument("sample_sizes: must be nonempty");
  }
  for (size_t i = 0; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] < 1) {
      throw std::invalid_argument("sample_sizes[" + std::to_string(i) +
                                  "]: must be >= 1");
    }
  }
  require_unique(sample_sizes, "sample_sizes");
  if (replications < 1) {
    throw std::invalid_argument("replications: must be >= 1");
  }
  for (size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0) || !(epsilons[i] < 1.0)) {
      throw std::invalid_argument("epsilons[" + std::to_string(i) +
                                  "]: must lie in [0, 1)");
    }
  }
  require_unique(epsilons, "epsilons");
  if (x0_rule != "0..3lambda") {
    throw std::invalid_argument("x0_rule: only '0..3lambda' is supported");
  }
  if (estimators.empty()) {
    throw std::invalid_argument("estimators: must be nonempty");
  }
  std::vector<std::string> labels;
  labels.reserve(estimators.size());
  for (const auto& e : estimators) labels.push_back(e.label());
  require_unique(labels, "estimators");
}

SimulationConfig SimulationConfig::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");

  static const std::set<std::string> known = {
      "family",  "lambdas",     "sample_sizes", "replications",
      "epsilons", "x0_rule",    "master_seed",  "estimators"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument("config: unknown field '" + key + "'");
    }
  }

  SimulationConfig cfg;
  const auto number_array = [&](const char* field,
                                std::vector<double>* out) {
    const auto& arr = j.at(field);
    if (!arr.is_array()) {
      throw std::invalid_argument(std::string(field) + ": expected an array");
    }
    for (size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) {
        throw std::invalid_argument(std::string(field) + "[" +
                                    std::to_string(i) + "]: expected a number");
      }
      out->push_back(arr[i].get<double>());
    }
  };

  if (j.contains("family")) {
    if (!j["family"].is_string()) {
      throw std::invalid_argument("family: expected a string");
    }
    cfg.family = j["family"].get<std::string>();
  }
  if (!j.contains("lambdas")) {
    throw std::invalid_argument("lambdas: required field missing");
  }
  number_array("lambdas", &cfg.lambdas);
  if (!j.contains("sample_sizes")) {
    throw std::invalid_argument("sample_sizes: required field missing");
  }
  {
    const auto& arr = j.at("sample_sizes");
    if (!arr.is_array()) {
      throw std::invalid_argument("sample_sizes: expected an array");
    }
    for (size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number_integer()) {
        throw std::invalid_argument("sample_sizes[" + std::to_string(i) +
                                    "]: expected an integer");
      }
      cfg.sample_sizes.push_back(arr[i].get<int>());
    }
  }
  if (j.contains("replications")) {
    if (!j["replications"].is_number_integer()) {
      throw std::invalid_argument("replications: expected an integer");
    }
    cfg.replications = j["replications"].get<int>();
  }
  if (j.contains("epsilons")) number_array("epsilons", &cfg.epsilons);
  if (j.contains("x0_rule")) {
    if (!j["x0_rule"].is_string()) {
      throw std::invalid_argument("x0_rule: expected a string");
    }
    cfg.x0_rule = j["x0_rule"].get<std::string>();
  }
  if (j.contains("master_seed")) {
    const auto& seed = j["master_seed"];
    if (!seed.is_number_integer() ||
        (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw std::invalid_argument("master_seed: expected a nonnegative integer");
    }
    cfg.master_seed = seed.get<std::uint64_t>();
  }
  if (!j.contains("estimators")) {
    throw std::invalid_argument("estimators: required field missing");
  }
  {
    const auto& arr = j.at("estimators");
    if (!arr.is_array()) {
      throw std::invalid_argument("estimators: expected an array");
    }
    for (size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) {
        throw std::invalid_argument("estimators[" + std::to_string(i) +
                                    "]: expected a string");
      }
      try {
        cfg.estimators.push_back(
            EstimatorSpec::parse(arr[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("estimators[" + std::to_string(i) +
                                    "]: " + e.what());
      }
    }
  }
  cfg.validate();
  return cfg;
}

std::string SimulationConfig::to_json_text() const {
  ordered_json j;
  j["family"] = family;
  j["lambdas"] = lambdas;
  j["sample_sizes"] = sample_sizes;
  j["replications"] = replications;
  j["epsilons"] = epsilons;
  j["x0_rule"] = x0_rule;
  j["master_seed"] = master_seed;
  std::vector<std::string> labels;
  labels.reserve(estimators.size());
  for (const auto& e : estimators) labels.push_back(e.label());
  j["estimators"] = labels;
  return j.dump(2) + "\n";
}

const CellStats* SimulationResult::find(const CellKey& key) const {
  const auto it = cells_.find(key);
  return it == cells_.end() ? nullptr : &it->second;
}

CellStats run_cell(const ParametricFamily& family, double lambda, int n,
                   double eps, std::optional<int> x0,
                   const EstimatorSpec& estimator, int replications,
                   std::uint64_t master_seed) {
  if (replications < 1) {
    throw std::invalid_argument("run_cell: replications must be >= 1");
  }
  if (n < 1) throw std::invalid_argument("run_cell: n must be >= 1");
  if (!(eps >= 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("run_cell: eps must lie in [0, 1)");
  }
  if (eps > 0.0 && !x0.has_value()) {
    throw std::invalid_argument("run_cell: contaminated cell needs x0");
  }
  GInverseCache cache;
  const CellKey key{estimator.label(), n, lambda, eps,
                    eps > 0.0 ? x0 : std::nullopt};
  return run_cell_impl(family, key, estimator, replications, master_seed,
                       cache);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UMEDEST_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SimulationResult run_simulation(const SimulationConfig& config, int threads) {
  config.validate();
  const PoissonFamily family;

  std::vector<CellKey> cells;
  for (const auto& est : config.estimators) {
    const std::string label = est.label();
    for (const int n : config.sample_sizes) {
      for (const double lambda : config.lambdas) {
        cells.push_back({label, n, lambda, 0.0, std::nullopt});
        for (const double eps : config.epsilons) {
          if (eps == 0.0) continue;
          for (int x0 = 0; x0 <= x0_grid_max(lambda); ++x0) {
            cells.push_back({label, n, lambda, eps, x0});
          }
        }
      }
    }
  }

  std::vector<CellStats> stats(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  GInverseCache cache;
  std::atomic<size_t> next{0};

  const auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        stats[i] = run_cell_impl(family, cells[i],
                                 spec_for(config.estimators, cells[i].estimator),
                                 config.replications, config.master_seed,
                                 cache);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(resolve_threads(threads),
                                static_cast<int>(cells.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t i = 0; i < cells.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  std::map<CellKey, CellStats> by_key;
  for (size_t i = 0; i < cells.size(); ++i) by_key[cells[i]] = stats[i];
  return SimulationResult(config, std::move(by_key));
}

double finite_sample_efficiency(const SimulationResult& result, int n,
                                double lambda) {
  const CellStats* opt =
      result.find({"optimal", n, lambda, 0.0, std::nullopt});
  const CellStats* mle = result.find({"mle", n, lambda, 0.0, std::nullopt});
  if (opt == nullptr || mle == nullptr) {
    throw std::invalid_argument(
        "finite_sample_efficiency: missing clean cells for n=" +
        std::to_string(n) + " lambda=" + fmt_g6(lambda) +
        " (need both 'optimal' and 'mle')");
  }
  return mle->mse / opt->mse;
}

std::vector<EfficiencyRow> efficiency_table(const SimulationResult& result) {
  std::vector<EfficiencyRow> rows;
  for (const int n : result.config().sample_sizes) {
    for (const double lambda : result.config().lambdas) {
      const CellStats* opt =
          result.find({"optimal", n, lambda, 0.0, std::nullopt});
      const CellStats* mle = result.find({"mle", n, lambda, 0.0, std::nullopt});
      if (opt == nullptr || mle == nullptr) continue;
      rows.push_back(
          {n, lambda, mle->mse, opt->mse, mle->mse / opt->mse});
    }
  }
  return rows;
}

std::vector<MaxMseRow> max_mse_table(const SimulationResult& result) {
  std::vector<MaxMseRow> rows;
  std::vector<std::string> missing;
  for (const auto& est : result.config().estimators) {
    const std::string label = est.label();
    for (const int n : result.config().sample_sizes) {
      for (const double eps : result.config().epsilons) {
        if (eps == 0.0) continue;
        for (const double lambda : result.config().lambdas) {
          MaxMseRow row{label, n, eps, lambda, -1.0, 0};
          for (int x0 = 0; x0 <= x0_grid_max(lambda); ++x0) {
            const CellStats* cell = result.find({label, n, lambda, eps, x0});
            if (cell == nullptr) {
              missing.push_back(cell_label({label, n, lambda, eps, x0}));
              continue;
            }
            if (cell->mse > row.max_mse) {
              row.max_mse = cell->mse;
              row.argmax_x0 = x0;
            }
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "max_mse_table: missing grid cells:";
    const size_t shown = std::min<size_t>(missing.size(), 5);
    for (size_t i = 0; i < shown; ++i) msg += " [" + missing[i] + "]";
    if (missing.size() > shown) {
      msg += " and " + std::to_string(missing.size() - shown) + " more";
    }
    throw std::invalid_argument(msg);
  }
  return rows;
}

std::vector<MaxMseRow> max_mse_table(const SimulationResult& result, int n,
                                     double epsilon) {
  std::vector<MaxMseRow> rows;
  for (auto& row : max_mse_table(result)) {
    if (row.n == n && row.epsilon == epsilon) rows.push_back(std::move(row));
  }
  return rows;
}

std::string cells_csv(const SimulationResult& result) {
  std::string out = "estimator,n,lambda,epsilon,x0,mse,mean_bias,replications_used\n";
  for (const auto& [key, cell] : result.cells()) {
    out += key.estimator + ',' + std::to_string(key.n) + ',' +
           fmt_g6(key.lambda) + ',' + fmt_g6(key.epsilon) + ',' +
           (key.x0.has_value() ? std::to_string(*key.x0)
                               : std::string("none")) +
           ',' + fmt_g6(cell.mse) + ',' + fmt_g6(cell.mean_bias) + ',' +
           std::to_string(cell.replications_used) + '\n';
  }
  return out;
}

std::string efficiency_csv(const SimulationResult& result) {
  std::string out = "n,lambda,mse_mle,mse_optimal,efficiency\n";
  for (const auto& row : efficiency_table(result)) {
    out += std::to_string(row.n) + ',' + fmt_g6(row.lambda) + ',' +
           fmt_g6(row.mse_mle) + ',' + fmt_g6(row.mse_optimal) + ',' +
           fmt_g6(row.efficiency) + '\n';
  }
  return out;
}

std::string max_mse_csv(const SimulationResult& result) {
  std::string out = "estimator,n,epsilon,lambda,max_mse,argmax_x0\n";
  for (const auto& row : max_mse_table(result)) {
    out += row.estimator + ',' + std::to_string(row.n) + ',' +
           fmt_g6(row.epsilon) + ',' + fmt_g6(row.lambda) + ',' +
           fmt_g6(row.max_mse) + ',' + std::to_string(row.argmax_x0) + '\n';
  }
  return out;
}

std::string result_json(const SimulationResult& result) {
  ordered_json j;
  j["config"] = ordered_json::parse(result.config().to_json_text());
  j["cells"] = ordered_json::array();
  for (const auto& [key, cell] : result.cells()) {
    ordered_json c;
    c["estimator"] = key.estimator;
    c["n"] = key.n;
    c["lambda"] = key.lambda;
    c["epsilon"] = key.epsilon;
    if (key.x0.has_value()) {
      c["x0"] = *key.x0;
    } else {
      c["x0"] = nullptr;
    }
    c["mse"] = cell.mse;
    c["mean_bias"] = cell.mean_bias;
    c["replications_used"] = cell.replications_used;
    j["cells"].push_back(std::move(c));
  }
  j["efficiency"] = ordered_json::array();
  for (const auto& row : efficiency_table(result)) {
    ordered_json r;
    r["n"] = row.n;
    r["lambda"] = row.lambda;
    r["mse_mle"] = row.mse_mle;
    r["mse_optimal"] = row.mse_optimal;
    r["efficiency"] = row.efficiency;
    j["efficiency"].push_back(std::move(r));
  }
  j["max_mse"] = ordered_json::array();
  for (const auto& row : max_mse_table(result)) {
    ordered_json r;
    r["estimator"] = row.estimator;
    r["n"] = row.n;
    r["epsilon"] = row.epsilon;
    r["lambda"] = row.lambda;
    r["max_mse"] = row.max_mse;
    r["argmax_x0"] = row.argmax_x0;
    j["max_mse"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

}  // namespace umedest
