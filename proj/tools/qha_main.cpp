// qha: generate data sets, compute entropies and concentration metrics,
// check the entropy bounds and run the experiment catalog.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or I/O error.

#include "qha/augmentation.hpp"
#include "qha/datasets.hpp"
#include "qha/experiments.hpp"
#include "qha/io.hpp"
#include "qha/metrics.hpp"
#include "qha/operators.hpp"
#include "qha/tf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainOptions {
  std::vector<double> rect;
  std::vector<int> cells;
  std::vector<double> center{0.0, 0.0};
  std::string file;
  bool full = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--rect", rect, "Rectangle width and height in phase units")->expected(2);
    cmd->add_option("--cells", cells, "Rectangle width and height in cells")->expected(2);
    cmd->add_option("--center", center, "Center (t, xi) of --rect in phase units")->expected(2);
    cmd->add_option("--domain", file, "JSON domain descriptor")->check(CLI::ExistingFile);
    cmd->add_flag("--full", full, "Use the whole torus");
  }

  bool given() const { return !rect.empty() || !cells.empty() || !file.empty() || full; }

  qha::Domain build(int d) const {
    const int count = !rect.empty() + !cells.empty() + !file.empty() + full;
    if (count != 1) throw UsageError("give exactly one of --rect, --cells, --domain or --full");
    const qha::PhaseGrid grid(d);
    if (full) return qha::full_domain(grid);
    if (!rect.empty()) return qha::make_rect_domain(grid, rect[0], rect[1], center[0], center[1]);
    if (!cells.empty()) return qha::make_rect_domain_cells(grid, cells[0], cells[1]);
    std::ifstream in(file);
    auto desc = qha::domain_descriptor_from_json(json::parse(in));
    if (desc.d == 0) desc.d = d;
    if (desc.d != d) throw UsageError("domain descriptor dimension does not match the data");
    return qha::domain_from_descriptor(desc);
  }
};

qha::DataSet generate(const std::string& family, int n, int d, std::uint64_t seed, double noise, double spread) {
  if (family == "chirps") return qha::gen_chirps(n, d, seed);
  if (family == "local") {
    qha::LocalComponentParams p;
    p.noise_energy = noise;
    p.spread = spread;
    return qha::gen_local_components(n, d, seed, p).data;
  }
  if (family == "tf_weighted") return qha::gen_random_tf_weighted(n, d, seed);
  if (family == "gauss_combos") return qha::gen_gaussian_combos(n, d, seed);
  if (family == "hermite") {
    auto h = qha::hermite_basis(d, n);
    return qha::normalize_dataset(qha::DataSet(std::move(h), seed, "hermite"));
  }
  if (family == "random") return qha::gen_random_signals(n, d, seed);
  throw UsageError("unknown family '" + family + "'");
}

json metrics_json(const qha::DataSet& data, const std::optional<qha::Domain>& omega) {
  const auto s = qha::data_operator(data);
  const auto st = qha::total_correlation(s);
  const auto ed = qha::effective_dimension(s);
  json out = {{"d", data.dim()},
              {"n", data.size()},
              {"entropy", ed.entropy},
              {"exp_entropy", ed.exp_entropy},
              {"purity", (s.matrix() * s.matrix()).trace().real()},
              {"stilde_entropy", qha::differential_entropy(st)}};
  if (omega) {
    const auto local = qha::mixed_state_localization(*omega, s);
    out["domain"] = qha::to_json(omega->descriptor());
    out["measure"] = omega->measure();
    out["alc"] = qha::alc(st, *omega);
    out["aug_entropy"] = qha::von_neumann_entropy(local.scaled(1.0 / omega->measure()));
  }
  return out;
}

int run_bounds(const qha::DataSet& data, const qha::Domain& omega) {
  const auto s = qha::data_operator(data);
  const auto st = qha::total_correlation(s);
  const auto b = qha::berezin_lieb_check(s, omega);
  const auto lemma = qha::lemma_alc_lower_bound(s, omega);
  const auto finite = qha::finite_rank_check(s, omega);
  const auto perim = qha::perimeter_bound_check(st, omega);
  const auto cov = qha::entropy_covariance_check(st);
  json out = {{"entropy_bounds", qha::to_json(b)},
              {"alc_lemma", {{"lhs", lemma.lhs}, {"rhs", lemma.rhs}, {"pass", lemma.pass}}},
              {"finite_rank", {{"lhs", finite.lhs}, {"rhs", finite.rhs}, {"pass", finite.pass}}},
              {"perimeter", {{"alc", perim.alc}, {"bound", perim.bound}, {"status", qha::to_string(perim.status)}}},
              {"entropy_covariance",
               {{"lhs", cov.lhs}, {"rhs", cov.rhs}, {"edge_mass", cov.edge_mass}, {"status", qha::to_string(cov.status)}}}};
  const bool pass = b.pass && lemma.pass && finite.pass && perim.status != qha::CheckStatus::fail &&
                    cov.status != qha::CheckStatus::fail;
  out["pass"] = pass;
  std::cout << out.dump(2) << "\n";
  return pass ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum harmonic analysis of time-series data sets"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a data set and write it to a signal file");
  std::string family = "chirps";
  int gen_n = 100;
  int gen_d = 280;
  std::uint64_t gen_seed = 1;
  double noise = 0.0;
  double spread = 0.5;
  std::string gen_out;
  gen->add_option("--family", family, "chirps, local, tf_weighted, gauss_combos, hermite or random")
      ->check(CLI::IsMember({"chirps", "local", "tf_weighted", "gauss_combos", "hermite", "random"}));
  gen->add_option("-n,--n", gen_n, "Number of signals")->check(CLI::PositiveNumber);
  gen->add_option("--d", gen_d, "Signal dimension")->check(CLI::Range(2, 1 << 14));
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--noise", noise, "Noise energy for the local family")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--spread", spread, "Shift spread for the local family, phase units");
  gen->add_option("-o,--out", gen_out, "Output file (.csv for CSV, binary otherwise)")->required();

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Entropy, total correlation and ALC of a data set");
  std::string metrics_in;
  DomainOptions metrics_domain;
  metrics->add_option("input", metrics_in, "Signal file")->required()->check(CLI::ExistingFile);
  metrics_domain.add_to(metrics);

  // augment
  auto* augment = app.add_subcommand("augment", "Write the time-frequency augmented data set");
  std::string aug_in;
  std::string aug_out;
  DomainOptions aug_domain;
  augment->add_option("input", aug_in, "Signal file")->required()->check(CLI::ExistingFile);
  augment->add_option("-o,--out", aug_out, "Output file")->required();
  aug_domain.add_to(augment);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Check the entropy and concentration bounds for a data set");
  std::string bounds_in;
  DomainOptions bounds_domain;
  bounds->add_option("input", bounds_in, "Signal file")->required()->check(CLI::ExistingFile);
  bounds_domain.add_to(bounds);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment from the catalog");
  std::string exp_name;
  std::string exp_config;
  std::optional<std::uint64_t> exp_seed;
  std::optional<int> exp_d;
  std::optional<int> exp_n;
  std::optional<int> exp_trials;
  std::optional<int> exp_threads;
  std::string exp_out;
  bool list = false;
  experiment->add_option("-e,--experiment", exp_name, "Experiment name");
  experiment->add_option("-c,--config", exp_config, "JSON config; flags override its fields")->check(CLI::ExistingFile);
  experiment->add_option("--seed", exp_seed, "Base seed; trial i uses seed + i");
  experiment->add_option("--d", exp_d, "Signal dimension")->check(CLI::Range(2, 1 << 14));
  experiment->add_option("-n,--n", exp_n, "Data set size")->check(CLI::PositiveNumber);
  experiment->add_option("--trials", exp_trials, "Number of trials or realizations")->check(CLI::PositiveNumber);
  experiment->add_option("--threads", exp_threads, "Worker threads for trial loops")->check(CLI::PositiveNumber);
  experiment->add_option("-o,--out", exp_out, "Output directory");
  auto* svg_flag = experiment->add_flag("--svg,!--no-svg", "Write the SVG figure (default on)");
  experiment->add_flag("--list", list, "List the experiment names and exit");

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a signal file between binary and CSV");
  std::string conv_in;
  std::string conv_out;
  convert->add_option("input", conv_in, "Input signal file")->required()->check(CLI::ExistingFile);
  convert->add_option("output", conv_out, "Output signal file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*gen) {
      const auto data = generate(family, gen_n, gen_d, gen_seed, noise, spread);
      qha::write_signals(gen_out, data);
      std::cerr << "wrote " << data.size() << " signals of dimension " << data.dim() << " to " << gen_out << "\n";
      return kOk;
    }
    if (*metrics) {
      const auto data = qha::read_signals(metrics_in);
      std::optional<qha::Domain> omega;
      if (metrics_domain.given()) omega = metrics_domain.build(data.dim());
      std::cout << metrics_json(data, omega).dump(2) << "\n";
      return kOk;
    }
    if (*augment) {
      const auto data = qha::read_signals(aug_in);
      const auto omega = aug_domain.build(data.dim());
      const auto out = qha::augment_dataset(omega, data);
      qha::write_signals(aug_out, out);
      std::cerr << "wrote " << out.size() << " signals to " << aug_out << "\n";
      return kOk;
    }
    if (*bounds) {
      const auto data = qha::read_signals(bounds_in);
      return run_bounds(data, bounds_domain.build(data.dim()));
    }
    if (*convert) {
      qha::write_signals(conv_out, qha::read_signals(conv_in));
      return kOk;
    }
    if (*experiment) {
      if (list) {
        for (const auto& name : qha::experiment_names()) std::cout << name << "\n";
        return kOk;
      }
      qha::ExperimentConfig config;
      if (!exp_config.empty()) {
        std::ifstream in(exp_config);
        config = qha::config_from_json(json::parse(in));
      }
      if (!exp_name.empty()) config.experiment = exp_name;
      if (config.experiment.empty()) throw UsageError("no experiment given (use --experiment or --list)");
      if (exp_seed) config.seed = *exp_seed;
      if (exp_d) config.d = *exp_d;
      if (exp_n) config.n = *exp_n;
      if (exp_trials) config.trials = *exp_trials;
      if (exp_threads) config.threads = *exp_threads;
      if (!exp_out.empty()) config.out = exp_out;
      if (svg_flag->count() > 0) config.svg = svg_flag->as<bool>();

      const auto result = qha::run_experiment(config);
      const auto files = qha::write_experiment(result);
      for (const auto& c : result.theorem_checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " theorem " << c.name << ": " << c.detail << "\n";
      }
      for (const auto& c : result.checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail << "\n";
      }
      std::cout << "wrote " << files.csv.string() << "\n";
      return result.theorems_hold() && result.checks_pass() ? kOk : kCheckFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "qha: " << e.what() << "\n";
    return kUsageError;
  } catch (const qha::FormatError& e) {
    std::cerr << "qha: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    std::cerr << "qha: bad JSON: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qha: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "qha: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
