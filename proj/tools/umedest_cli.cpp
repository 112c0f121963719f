// Command-line front end: uniform medians, point estimates, asymptotics,
// contamination bias tables, and simulation runs with stable text output.
//
// Exit codes: 0 success, 2 usage/input error, 3 solver failure,
// 4 internal error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "umedest/umedest.hpp"

namespace {

using nlohmann::ordered_json;
using namespace umedest;

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInternal = 4;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int_field(std::string_view text, const std::string& file,
                             size_t line_no, const char* what) {
  const std::string_view t = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument(file + ":" + std::to_string(line_no) +
                                ": expected " + what + ", got '" +
                                std::string(t) + "'");
  }
  return value;
}

// One nonnegative integer per line, or "k,count" pairs (autodetected by the
// presence of a comma). Blank lines are skipped.
EmpiricalDistribution load_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  std::vector<std::pair<int, std::int64_t>> counts;
  std::string line;
  size_t line_no = 0;
  bool pair_mode = false;
  bool mode_known = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    const bool has_comma = t.find(',') != std::string_view::npos;
    if (!mode_known) {
      pair_mode = has_comma;
      mode_known = true;
    } else if (has_comma != pair_mode) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": mixed single-value and k,count lines");
    }
    if (pair_mode) {
      const auto comma = t.find(',');
      const std::int64_t k =
          parse_int_field(t.substr(0, comma), path, line_no, "an integer k");
      const std::int64_t c =
          parse_int_field(t.substr(comma + 1), path, line_no, "a count");
      if (k < 0) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": negative value " + std::to_string(k));
      }
      if (c < 0) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": negative count " + std::to_string(c));
      }
      counts.emplace_back(static_cast<int>(k), c);
    } else {
      const std::int64_t v =
          parse_int_field(t, path, line_no, "a nonnegative integer");
      if (v < 0) {
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": negative value " + std::to_string(v));
      }
      counts.emplace_back(static_cast<int>(v), 1);
    }
  }
  if (counts.empty()) throw std::invalid_argument(path + ": no data");
  return EmpiricalDistribution::from_counts(counts);
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::invalid_argument(output_path + ": cannot open for writing");
  out << text;
}

std::unique_ptr<ParametricFamily> make_family(const std::string& name) {
  if (name == "poisson") return std::make_unique<PoissonFamily>();
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

struct CommonOpts {
  std::string family = "poisson";
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_family = true) {
  if (with_family) {
    cmd->add_option("--family", opts->family, "Distribution family")
        ->default_val("poisson");
  }
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");
  cmd->add_option("--output", opts->output,
                  "Write to this path instead of standard output");
}

int cmd_umed(const CommonOpts& opts, double theta, const std::string& data,
             bool has_theta) {
  UmedResult r;
  if (has_theta) {
    const auto family = make_family(opts.family);
    r = umed(*family->at(theta));
  } else {
    r = umed(load_data_file(data));
  }
  std::string text;
  if (opts.format == "csv") {
    text = "value,k0,p0,boundary\n" + fmt_f6(r.value) + ',' +
           std::to_string(r.k0) + ',' + fmt_f6(r.p0) + ',' +
           bool_str(r.boundary) + '\n';
  } else {
    ordered_json j;
    j["value"] = r.value;
    j["k0"] = r.k0;
    j["p0"] = r.p0;
    j["boundary"] = r.boundary;
    text = j.dump(2) + "\n";
  }
  emit(text, opts.output);
  return 0;
}

int cmd_estimate(const CommonOpts& opts, const std::string& data,
                 const std::string& method, double m, bool has_m) {
  const auto family = make_family(opts.family);
  const EmpiricalDistribution emp = load_data_file(data);
  EstimateResult r;
  if (method == "optimal") {
    if (has_m) {
      throw std::invalid_argument("--m only applies to --method hampel");
    }
    r = estimate_optimal(emp, *family);
  } else {
    if (!has_m) {
      throw std::invalid_argument("--method hampel requires --m");
    }
    r = estimate_hampel(emp, *family, {.m = m});
  }
  std::string text;
  if (opts.format == "csv") {
    text = "theta_hat,umed_target,method,m,iterations,residual\n" +
           fmt_f6(r.theta_hat) + ',' + fmt_f6(r.umed_target) + ',' + method +
           ',' + (method == "hampel" ? fmt_g6(m) : std::string()) + ',' +
           std::to_string(r.iterations) + ',' + fmt_g6(r.residual) + '\n';
  } else {
    ordered_json j;
    j["theta_hat"] = r.theta_hat;
    j["umed_target"] = r.umed_target;
    j["method"] = method;
    if (method == "hampel") {
      j["m"] = m;
    } else {
      j["m"] = nullptr;
    }
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    text = j.dump(2) + "\n";
  }
  emit(text, opts.output);
  return 0;
}

int cmd_asympt(const CommonOpts& opts, double theta) {
  const auto family = make_family(opts.family);
  const LimitLaw law = estimator_limit_law(*family, theta);
  const bool interior = law.kind == LimitLaw::Kind::kInterior;
  std::string text;
  if (opts.format == "csv") {
    text = "theta,case,sigma2_umed,g_prime,est_variance,efficiency,s_minus,s_plus\n";
    if (interior) {
      text += fmt_g6(theta) + ",interior," +
              fmt_g6(sigma2_umed(*family->at(theta))) + ',' +
              fmt_g6(g_prime(*family, theta)) + ',' + fmt_g6(law.variance) +
              ',' + fmt_g6(asymptotic_efficiency(*family, theta)) + ",,\n";
    } else {
      text += fmt_g6(theta) + ",boundary,,,,," + fmt_g6(law.scale_left) + ',' +
              fmt_g6(law.scale_right) + '\n';
    }
  } else {
    ordered_json j;
    j["theta"] = theta;
    j["case"] = interior ? "interior" : "boundary";
    if (interior) {
      j["sigma2_umed"] = sigma2_umed(*family->at(theta));
      j["g_prime"] = g_prime(*family, theta);
      j["est_variance"] = law.variance;
      j["efficiency"] = asymptotic_efficiency(*family, theta);
    } else {
      j["s_minus"] = law.scale_left;
      j["s_plus"] = law.scale_right;
    }
    text = j.dump(2) + "\n";
  }
  emit(text, opts.output);
  return 0;
}

int cmd_bias_table(const CommonOpts& opts, const std::vector<double>& lambdas,
                   const std::vector<double>& epsilons) {
  const auto family = make_family(opts.family);
  std::string csv =
      "epsilon,lambda,max_bias,argmax_x0,grid_max_bias,bias_at_infinity\n";
  ordered_json rows = ordered_json::array();
  for (const double eps : epsilons) {
    for (const double lambda : lambdas) {
      const MaxBiasResult r = max_bias(*family, lambda, eps);
      const std::string argmax =
          r.argmax.has_value() ? std::to_string(*r.argmax) : std::string("inf");
      csv += fmt_g6(eps) + ',' + fmt_g6(lambda) + ',' + fmt_g6(r.bias) + ',' +
             argmax + ',' + fmt_g6(r.grid_max) + ',' + fmt_g6(r.at_infinity) +
             '\n';
      ordered_json j;
      j["epsilon"] = eps;
      j["lambda"] = lambda;
      j["max_bias"] = r.bias;
      j["argmax_x0"] = argmax;
      j["grid_max_bias"] = r.grid_max;
      j["bias_at_infinity"] = r.at_infinity;
      rows.push_back(std::move(j));
    }
  }
  ordered_json out;
  out["rows"] = std::move(rows);
  emit(opts.format == "csv" ? csv : out.dump(2) + "\n", opts.output);
  return 0;
}

int cmd_efficiency_table(const CommonOpts& opts,
                         const std::vector<double>& lambdas) {
  const auto family = make_family(opts.family);
  std::string csv = "lambda,efficiency\n";
  ordered_json rows = ordered_json::array();
  for (const double lambda : lambdas) {
    const double eff = asymptotic_efficiency(*family, lambda);
    csv += fmt_g6(lambda) + ',' + fmt_g6(eff) + '\n';
    ordered_json j;
    j["lambda"] = lambda;
    j["efficiency"] = eff;
    rows.push_back(std::move(j));
  }
  ordered_json out;
  out["rows"] = std::move(rows);
  emit(opts.format == "csv" ? csv : out.dump(2) + "\n", opts.output);
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& format,
                 const std::string& prefix, int threads) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument(config_path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const SimulationConfig config = SimulationConfig::from_json_text(buf.str());
  const SimulationResult result = run_simulation(config, threads);
  if (format == "csv") {
    emit(cells_csv(result), prefix + "_cells.csv");
    emit(efficiency_csv(result), prefix + "_efficiency.csv");
    emit(max_mse_csv(result), prefix + "_max_mse.csv");
    std::cout << "wrote " << prefix << "_cells.csv, " << prefix
              << "_efficiency.csv, " << prefix << "_max_mse.csv\n";
  } else {
    emit(result_json(result), prefix + ".json");
    std::cout << "wrote " << prefix << ".json\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum gross-error-sensitivity estimation for integer-"
               "supported families via the uniform median"};
  app.require_subcommand(1);

  // umed
  CommonOpts umed_opts;
  double umed_theta = 0.0;
  std::string umed_data;
  auto* umed_cmd = app.add_subcommand("umed", "Uniform median of a model or a data file");
  add_common(umed_cmd, &umed_opts);
  auto* umed_theta_opt = umed_cmd->add_option("--theta", umed_theta, "Family parameter");
  auto* umed_data_opt = umed_cmd->add_option("--data", umed_data, "Data file");

  // estimate
  CommonOpts est_opts;
  std::string est_data;
  std::string est_method = "optimal";
  double est_m = 0.0;
  auto* est_cmd = app.add_subcommand("estimate", "Point estimate from a data file");
  add_common(est_cmd, &est_opts);
  est_cmd->add_option("--data", est_data, "Data file")->required();
  est_cmd->add_option("--method", est_method, "Estimator")
      ->check(CLI::IsMember({"optimal", "hampel"}))
      ->default_val("optimal");
  auto* est_m_opt = est_cmd->add_option("--m", est_m, "Huber truncation (hampel)");

  // asympt
  CommonOpts asy_opts;
  double asy_theta = 0.0;
  auto* asy_cmd = app.add_subcommand("asympt", "Asymptotic variance / limit law at theta");
  add_common(asy_cmd, &asy_opts);
  asy_cmd->add_option("--theta", asy_theta, "Family parameter")->required();

  // bias-table
  CommonOpts bias_opts;
  std::vector<double> bias_lambdas{5.0, 10.0, 20.0};
  std::vector<double> bias_epsilons{0.1, 0.2};
  auto* bias_cmd = app.add_subcommand("bias-table", "Maximum asymptotic bias under point contamination");
  add_common(bias_cmd, &bias_opts);
  bias_cmd->add_option("--lambdas", bias_lambdas, "Parameter values")
      ->delimiter(',');
  bias_cmd->add_option("--epsilons", bias_epsilons, "Contamination rates")
      ->delimiter(',');

  // efficiency-table
  CommonOpts eff_opts;
  std::vector<double> eff_lambdas{5.0, 10.0, 20.0};
  auto* eff_cmd = app.add_subcommand("efficiency-table", "Asymptotic efficiency vs maximum likelihood");
  add_common(eff_cmd, &eff_opts);
  eff_cmd->add_option("--lambdas", eff_lambdas, "Parameter values")
      ->delimiter(',');

  // simulate
  std::string sim_config;
  std::string sim_format = "csv";
  std::string sim_prefix = "simulation";
  int sim_threads = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study from a JSON config");
  sim_cmd->add_option("--config", sim_config, "JSON config file")->required();
  sim_cmd->add_option("--format", sim_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");
  sim_cmd->add_option("--output", sim_prefix, "Output path prefix")
      ->default_val("simulation");
  sim_cmd->add_option("--threads", sim_threads,
                      "Worker threads (0 = UMEDEST_THREADS env or hardware)");

  try {
    app.parse(argc, argv);

    if (umed_cmd->parsed()) {
      const bool has_theta = umed_theta_opt->count() > 0;
      const bool has_data = umed_data_opt->count() > 0;
      if (has_theta == has_data) {
        throw CLI::ValidationError(
            "umed", "exactly one of --theta / --data must be given");
      }
      return cmd_umed(umed_opts, umed_theta, umed_data, has_theta);
    }
    if (est_cmd->parsed()) {
      return cmd_estimate(est_opts, est_data, est_method, est_m,
                          est_m_opt->count() > 0);
    }
    if (asy_cmd->parsed()) return cmd_asympt(asy_opts, asy_theta);
    if (bias_cmd->parsed()) {
      return cmd_bias_table(bias_opts, bias_lambdas, bias_epsilons);
    }
    if (eff_cmd->parsed()) return cmd_efficiency_table(eff_opts, eff_lambdas);
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim_config, sim_format, sim_prefix, sim_threads);
    }
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const umedest::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const umedest::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
