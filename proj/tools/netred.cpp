// netred: generate, cluster, reduce and simulate two-group dynamic networks,
// and run the numerical validation suites. All commands are deterministic
// functions of their input files, flags and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "netred/dynamics.hpp"
#include "netred/errors.hpp"
#include "netred/graph.hpp"
#include "netred/polyrat.hpp"
#include "netred/reduction.hpp"
#include "netred/rng.hpp"
#include "netred/serialize.hpp"
#include "netred/sim.hpp"
#include "netred/spectral.hpp"
#include "netred/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netred;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitSuiteFailure = 3;
constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int n_a = 30;
  int n_b = 20;
  double p = 0.6;
  double q = 0.1;
  double w_p = 5.0;
  double w_q = 0.5;
  GeneratorRanges ranges;
  RationalFunction coupling = RationalFunction::integrator();
  DisturbanceSpec disturbance{1, 1.0, 0.0};
  double t_final = kDefaultHorizon;
  double dt = kDefaultTimeStep;
  double delta = 0.1;
  int trials = 100;
};

double require_number(const json& node, const std::string& field) {
  if (!node.contains(field) || !node.at(field).is_number())
    throw InvalidConfig("config field \"" + field + "\" must be a number");
  return node.at(field).get<double>();
}

std::array<double, 2> require_range(const json& node, const std::string& field) {
  if (!node.contains(field) || !node.at(field).is_array() ||
      node.at(field).size() != 2)
    throw InvalidConfig("config field \"" + field + "\" must be [lo, hi]");
  std::array<double, 2> out{node.at(field).at(0).get<double>(),
                            node.at(field).at(1).get<double>()};
  if (!(out[0] <= out[1]))
    throw InvalidConfig("config field \"" + field + "\" needs lo <= hi");
  return out;
}

ExperimentConfig load_config(const std::optional<fs::path>& path) {
  ExperimentConfig cfg;
  if (!path) return cfg;
  json doc;
  try {
    doc = json::parse(read_text_file(*path));
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config parse error: ") + e.what());
  }
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("wsbm")) {
    const json& w = doc.at("wsbm");
    cfg.n_a = static_cast<int>(require_number(w, "n_a"));
    cfg.n_b = static_cast<int>(require_number(w, "n_b"));
    cfg.p = require_number(w, "p");
    cfg.q = require_number(w, "q");
    cfg.w_p = require_number(w, "w_p");
    cfg.w_q = require_number(w, "w_q");
  }
  if (doc.contains("generator_ranges")) {
    const json& r = doc.at("generator_ranges");
    cfg.ranges.inertia = require_range(r, "m");
    cfg.ranges.damping = require_range(r, "d");
    cfg.ranges.droop = require_range(r, "r");
    cfg.ranges.turbine_tau = require_range(r, "tau");
  }
  if (doc.contains("coupling"))
    cfg.coupling = rational_from_json(doc.at("coupling").dump());
  if (doc.contains("disturbance")) {
    const json& d = doc.at("disturbance");
    cfg.disturbance.node = static_cast<int>(require_number(d, "node"));
    cfg.disturbance.magnitude = require_number(d, "magnitude");
    if (d.contains("start_time"))
      cfg.disturbance.start_time = d.at("start_time").get<double>();
  }
  if (doc.contains("sim")) {
    const json& s = doc.at("sim");
    cfg.t_final = require_number(s, "t_final");
    cfg.dt = require_number(s, "dt");
  }
  if (doc.contains("delta")) cfg.delta = doc.at("delta").get<double>();
  if (doc.contains("trials")) cfg.trials = doc.at("trials").get<int>();

  if (cfg.n_a < 1 || cfg.n_b < 1)
    throw InvalidConfig("config field \"wsbm.n_a\"/\"wsbm.n_b\" must be >= 1");
  if (cfg.trials < 1) throw InvalidConfig("config field \"trials\" must be >= 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw InvalidConfig("config field \"delta\" must lie in (0, 1)");
  if (!(cfg.dt > 0.0)) throw InvalidConfig("config field \"sim.dt\" must be > 0");
  try {
    cfg.ranges.validate();
  } catch (const std::exception& e) {
    throw InvalidConfig(std::string("config field \"generator_ranges\": ") +
                        e.what());
  }
  return cfg;
}

// Accepts "re+imj", "re-imj", "imj" and plain "re" (e.g. "0.5+2j", "1j", "3").
std::complex<double> parse_complex(const std::string& token) {
  try {
    std::string body = token;
    const bool has_j = !body.empty() && (body.back() == 'j' || body.back() == 'J');
    if (has_j) body.pop_back();
    if (!has_j) return {std::stod(token), 0.0};
    // Split at the sign separating real and imaginary parts, if any.
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') &&
          body[i - 1] != 'e' && body[i - 1] != 'E') {
        const double re = std::stod(body.substr(0, i));
        std::string imag = body.substr(i);
        if (imag == "+") imag = "1";
        if (imag == "-") imag = "-1";
        return {re, std::stod(imag)};
      }
    }
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, std::stod(body)};
  } catch (const std::exception&) {
    throw InvalidConfig("cannot parse complex point \"" + token + "\"");
  }
}

std::vector<std::complex<double>> parse_s0_grid(const std::string& list) {
  if (list.empty()) return default_s0_grid();
  std::vector<std::complex<double>> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::string token = list.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) out.push_back(parse_complex(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InvalidConfig("empty --s0-grid");
  return out;
}

std::string format_complex(std::complex<double> s) {
  std::ostringstream os;
  os.precision(12);
  os << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "j";
  return os.str();
}

struct GeneratedNetwork {
  std::vector<GeneratorParams> generators;
  Laplacian laplacian;
  PlantedLabels planted;
};

GeneratedNetwork build_network(const ExperimentConfig& cfg) {
  const WsbmParams wsbm =
      WsbmParams::contiguous(cfg.n_a, cfg.n_b, cfg.p, cfg.q, cfg.w_p, cfg.w_q,
                             Rng::child_seed(cfg.seed, 0));
  WsbmSample sample = sample_wsbm(wsbm);
  GeneratedNetwork out{
      sample_generators(wsbm.n(), cfg.ranges, Rng::child_seed(cfg.seed, 1)),
      std::move(sample.laplacian), PlantedLabels{wsbm.part_a, wsbm.part_b}};
  return out;
}

int cmd_generate(const std::optional<fs::path>& config_path,
                 std::optional<std::uint64_t> seed_override,
                 const fs::path& out_path) {
  ExperimentConfig cfg = load_config(config_path);
  if (seed_override) cfg.seed = *seed_override;
  try {
    const GeneratedNetwork gen = build_network(cfg);
    write_text_file(out_path,
                    generated_network_to_json(gen.generators, cfg.coupling,
                                              gen.laplacian, gen.planted));
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  std::cout << "wrote " << out_path.string() << "\n";
  return kExitOk;
}

int cmd_cluster(const fs::path& model_path, const fs::path& out_path) {
  const LoadedNetwork loaded = network_from_json(read_text_file(model_path));
  const Partition part = spectral_cluster(loaded.model.laplacian);
  write_text_file(out_path, partition_to_json(part));
  std::cout << "lambda2 " << part.lambda2 << ", groups " << part.group_a.size()
            << "/" << part.group_b.size() << "\n";
  return kExitOk;
}

int cmd_reduce(const fs::path& model_path, const fs::path& out_path) {
  const LoadedNetwork loaded = network_from_json(read_text_file(model_path));
  const ReducedModel rm = reduce_network(loaded.model);
  write_text_file(out_path, reduced_to_json(rm));
  std::cout << "reduced coupling weight " << rm.l_hat_weight << "\n";
  return kExitOk;
}

int cmd_simulate(const fs::path& model_path,
                 const std::optional<fs::path>& reduced_path,
                 const DisturbanceSpec& dist, double t_final, double dt,
                 const fs::path& out_path) {
  const LoadedNetwork loaded = network_from_json(read_text_file(model_path));
  const ReducedModel rm = reduced_path
                              ? reduced_from_json(read_text_file(*reduced_path))
                              : reduce_network(loaded.model);
  const ResponseRecord record =
      response_report(loaded.model, rm, dist, t_final, dt);
  write_text_file(out_path, response_to_csv(record));
  if (record.diverged)
    std::cerr << "warning: response exceeded 1e9, series truncated\n";
  std::cout << "wrote " << out_path.string() << "\n";
  return kExitOk;
}

int cmd_pipeline(const fs::path& model_path, const fs::path& out_dir,
                 const std::string& s0_list, const DisturbanceSpec& dist,
                 double t_final, double dt) {
  const LoadedNetwork loaded = network_from_json(read_text_file(model_path));
  const NetworkModel& net = loaded.model;
  const auto grid = parse_s0_grid(s0_list);
  fs::create_directories(out_dir);

  const Partition part = spectral_cluster(net.laplacian);
  const ReducedModel rm = reduce_network(net);
  const ResponseRecord record = response_report(net, rm, dist, t_final, dt);
  const FiedlerPair pair = fiedler_pair(net.laplacian);
  const EigenPairs eig = symmetric_eig(net.laplacian.matrix());

  json report;
  report["schema_version"] = kSchemaVersion;
  report["lambda2"] = part.lambda2;
  report["lambda3"] = net.size() >= 3 ? eig.values(2) : eig.values(net.size() - 1);
  report["fiedler_isolated"] = part.fiedler_isolated;
  report["group_sizes"] = json::array(
      {part.group_a.size(), part.group_b.size()});

  json points = json::array();
  double thm2_residual_max = 0.0;
  for (const auto& s0 : grid) {
    json point;
    point["s0"] = format_complex(s0);
    try {
      const RankTwoErrorBound bound = rank_two_error_bound(net, s0);
      point["lhs"] = bound.lhs;
      point["rhs"] = bound.applicable ? json(bound.rhs) : json();
      point["applicable"] = bound.applicable;
      point["rcond"] = solve_tyu(net, s0).rcond;
      const double t2_norm = spectral_norm(evaluate_t2(net, pair, s0));
      const double residual =
          spectral_norm(evaluate_t2(net, pair, s0) - lift_reduced(rm, s0)) /
          t2_norm;
      thm2_residual_max = std::max(thm2_residual_max, residual);
    } catch (const Error& e) {
      point["skipped"] = e.what();
    }
    points.push_back(std::move(point));
  }
  report["theorem1"] = std::move(points);
  report["theorem2_residual_max"] = thm2_residual_max;

  report["rms"] = json{
      {"group_a", json{{"vs_mean", record.rms_vs_mean[0]},
                       {"vs_members", record.rms_vs_members[0]}}},
      {"group_b", json{{"vs_mean", record.rms_vs_mean[1]},
                       {"vs_members", record.rms_vs_members[1]}}}};

  const int last = static_cast<int>(record.times.size()) - 1;
  json steady;
  steady["full_min"] = record.full_outputs.col(last).minCoeff();
  steady["full_max"] = record.full_outputs.col(last).maxCoeff();
  steady["reduced_a"] = record.reduced_outputs(0, last);
  steady["reduced_b"] = record.reduced_outputs(1, last);
  // Predicted consensus value applies when the coupling integrates
  // (f has a pole at s = 0).
  if (std::abs(net.coupling.den()(std::complex<double>(0.0, 0.0))) < 1e-12) {
    std::complex<double> dc_inv = 0.0;
    for (const auto& g : net.nodes) dc_inv += g.eval_reciprocal(0.0);
    steady["predicted"] = dist.magnitude / dc_inv.real();
  }
  report["steady_state"] = std::move(steady);

  if (loaded.planted)
    report["partition_mismatch"] =
        partition_mismatch(part, loaded.planted->group_a, loaded.planted->group_b);

  write_text_file(out_dir / "partition.json", partition_to_json(part));
  write_text_file(out_dir / "reduced.json", reduced_to_json(rm));
  write_text_file(out_dir / "response.csv", response_to_csv(record));
  write_text_file(out_dir / "report.json", report.dump(2) + "\n");
  std::cout << "wrote partition.json, reduced.json, response.csv, report.json to "
            << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& suite, int trials, std::uint64_t seed,
                 double delta, double t_final, double dt,
                 const std::string& s0_list,
                 const std::optional<fs::path>& out_path) {
  SuiteResult result;
  if (suite == "spectrum")
    result = run_spectrum_suite(trials, seed);
  else if (suite == "thm1")
    result = run_thm1_suite(trials, seed, parse_s0_grid(s0_list));
  else if (suite == "thm2")
    result = run_thm2_suite(trials, seed);
  else if (suite == "prop1")
    result = run_prop1_suite(trials, seed, delta);
  else if (suite == "thm4")
    result = run_thm4_suite(trials, seed, delta);
  else if (suite == "coherence")
    result = run_coherence_suite(trials, seed, t_final, dt);
  else
    throw InvalidConfig("unknown suite \"" + suite +
                        "\" (expected spectrum|thm1|thm2|prop1|thm4|coherence)");

  json report;
  report["schema_version"] = kSchemaVersion;
  report["suite"] = result.suite;
  report["trials"] = result.trials;
  report["checks"] = result.checks;
  report["failures"] = result.failures;
  report["violation_rate"] = result.violation_rate;
  report["delta"] = delta;
  report["slack"] = json{{"min", result.slack_min},
                         {"median", result.slack_median},
                         {"max", result.slack_max}};
  report["passed"] = result.passed;
  report["notes"] = result.notes;
  const std::string text = report.dump(2) + "\n";
  if (out_path)
    write_text_file(*out_path, text);
  else
    std::cout << text;
  std::cout << (result.passed ? "PASS " : "FAIL ") << result.suite << ": "
            << result.failures << " failures over " << result.checks
            << " checks in " << result.trials << " trials\n";
  return result.passed ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model reduction for dynamic networks with two coherent groups"};
  app.require_subcommand(1);

  std::string config_str, model_str, out_str, reduced_str, suite;
  std::string s0_list;
  std::string out_dir_str = "out";
  std::uint64_t seed = 1;
  bool seed_given = false;
  int trials = 100;
  double delta = 0.1;
  double t_final = kDefaultHorizon;
  double dt = kDefaultTimeStep;
  DisturbanceSpec dist{1, 1.0, 0.0};

  auto* gen = app.add_subcommand("generate", "Sample a WSBM generator network");
  gen->add_option("--config", config_str, "Experiment config JSON");
  gen->add_option("--seed", seed, "Seed override")->each([&](const std::string&) {
    seed_given = true;
  });
  gen->add_option("--out", out_str, "Output model JSON")->required();

  auto* cluster = app.add_subcommand("cluster", "Two-way spectral clustering");
  cluster->add_option("--model", model_str, "Network model JSON")->required();
  cluster->add_option("--out", out_str, "Output partition JSON")->required();

  auto* reduce = app.add_subcommand("reduce", "Build the two-node reduced model");
  reduce->add_option("--model", model_str, "Network model JSON")->required();
  reduce->add_option("--out", out_str, "Output reduced-model JSON")->required();

  auto* simulate = app.add_subcommand("simulate", "Step-response simulation");
  simulate->add_option("--model", model_str, "Network model JSON")->required();
  simulate->add_option("--reduced", reduced_str,
                       "Reduced model JSON (recomputed when omitted)");
  simulate->add_option("--node", dist.node, "Disturbed node (0-based)");
  simulate->add_option("--magnitude", dist.magnitude, "Step magnitude");
  simulate->add_option("--start-time", dist.start_time, "Step onset time [s]");
  simulate->add_option("--t-final", t_final, "Simulation horizon [s]");
  simulate->add_option("--dt", dt, "Integration step [s]");
  simulate->add_option("--out", out_str, "Output response CSV")->required();

  auto* pipeline = app.add_subcommand(
      "pipeline", "cluster -> reduce -> simulate -> report");
  pipeline->add_option("--model", model_str, "Network model JSON")->required();
  pipeline->add_option("--out-dir", out_dir_str, "Output directory");
  pipeline->add_option("--s0-grid", s0_list,
                       "Comma list of complex points, e.g. 0.5+2j,1j");
  pipeline->add_option("--node", dist.node, "Disturbed node (0-based)");
  pipeline->add_option("--magnitude", dist.magnitude, "Step magnitude");
  pipeline->add_option("--t-final", t_final, "Simulation horizon [s]");
  pipeline->add_option("--dt", dt, "Integration step [s]");

  auto* validate = app.add_subcommand("validate", "Run a property suite");
  validate
      ->add_option("--suite", suite,
                   "spectrum|thm1|thm2|prop1|thm4|coherence")
      ->required();
  validate->add_option("--trials", trials, "Trial count");
  validate->add_option("--seed", seed, "Master seed");
  validate->add_option("--delta", delta, "Failure probability delta");
  validate->add_option("--t-final", t_final, "Simulation horizon [s]");
  validate->add_option("--dt", dt, "Integration step [s]");
  validate->add_option("--s0-grid", s0_list, "Complex grid for thm1");
  validate->add_option("--out", out_str, "Write report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (gen->parsed())
      return cmd_generate(
          config_str.empty() ? std::nullopt
                             : std::optional<fs::path>(config_str),
          seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt,
          out_str);
    if (cluster->parsed()) return cmd_cluster(model_str, out_str);
    if (reduce->parsed()) return cmd_reduce(model_str, out_str);
    if (simulate->parsed())
      return cmd_simulate(model_str,
                          reduced_str.empty()
                              ? std::nullopt
                              : std::optional<fs::path>(reduced_str),
                          dist, t_final, dt, out_str);
    if (pipeline->parsed())
      return cmd_pipeline(model_str, out_dir_str, s0_list, dist, t_final, dt);
    if (validate->parsed())
      return cmd_validate(
          suite, trials, seed, delta, t_final, dt, s0_list,
          out_str.empty() ? std::nullopt : std::optional<fs::path>(out_str));
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const FileFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
