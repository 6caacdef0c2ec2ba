// ktlab: command-line front end, one subcommand per experiment kind.

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kicktop/config.hpp"
#include "kicktop/dataset.hpp"
#include "kicktop/error.hpp"
#include "kicktop/experiments.hpp"
#include "kicktop/version.hpp"

namespace {

using kicktop::ExperimentConfig;
using kicktop::ExperimentKind;

struct Invocation {
  ExperimentKind kind;
  CLI::App* app = nullptr;
  std::string config_file;
  std::string out_dir = ".";
  bool dump_samples = false;
  bool quiet = false;
  std::map<std::string, std::string> overrides;
};

const char* describe(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kPhasePortrait: return "classical trajectories over a grid of starts";
    case ExperimentKind::kEntropyDynamics: return "quantum single-spin entropy vs time";
    case ExperimentKind::kEntropyMap: return "quantum equilibrium entropy over initial orientations";
    case ExperimentKind::kThermoMap: return "large-j classical entropy over initial orientations";
    case ExperimentKind::kMiDynamics: return "classical mutual information vs time";
    case ExperimentKind::kMiMap: return "equilibrium mutual information over initial orientations";
    case ExperimentKind::kTeqScaling: return "equilibration time vs system size";
    case ExperimentKind::kLyapunov: return "largest Lyapunov exponent of the classical map";
    case ExperimentKind::kVnVsLinear: return "von Neumann vs linear entropy of one spin";
    case ExperimentKind::kMiSelftest: return "mutual information estimator on Gaussian data";
  }
  return "";
}

void print_summary(const kicktop::Dataset& d, const std::filesystem::path& dir) {
  const auto& res = d.metadata["results"];
  std::cout << d.kind << ": " << d.rows.size() << " rows -> " << (dir / (d.kind + ".csv")).string()
            << "\n";
  if (d.kind == "lyapunov") {
    std::cout << "lambda = " << res["lambda"].get<double>() << "  (n = " << res["blocks"]
              << ", s = " << res["steps_per_block"] << ")\n";
    return;
  }
  for (auto it = res.begin(); it != res.end(); ++it) {
    std::cout << "  " << it.key() << ": " << it.value().dump() << "\n";
  }
}

int run(const Invocation& inv) {
  ExperimentConfig config = ExperimentConfig::defaults(inv.kind);
  if (!inv.config_file.empty()) kicktop::apply_config_file(config, inv.config_file);
  for (const auto& [key, value] : inv.overrides) config.set(key, value);
  config.validate();

  const kicktop::Dataset data = kicktop::run_experiment(config);
  const std::filesystem::path dir(inv.out_dir);
  data.write_bundle(dir);
  if (inv.dump_samples && inv.kind == ExperimentKind::kMiDynamics) {
    const auto samples = kicktop::mi_dynamics_samples(config);
    std::ofstream os(dir / "mi-dynamics.samples.csv");
    kicktop::write_samples_csv(os, samples);
  }
  if (!inv.quiet) print_summary(data, dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kicked-top experiments: classical and quantum entanglement diagnostics", "ktlab"};
  app.set_version_flag("--version", std::string(kicktop::kVersion));
  app.require_subcommand(1);

  std::vector<Invocation> invocations;
  invocations.reserve(kicktop::all_kinds().size());
  for (ExperimentKind kind : kicktop::all_kinds()) {
    auto& inv = invocations.emplace_back();
    inv.kind = kind;
    inv.app = app.add_subcommand(std::string(kicktop::to_string(kind)), describe(kind));
    inv.app->add_option("--config", inv.config_file, "key = value file applied before flags")
        ->check(CLI::ExistingFile);
    inv.app->add_option("--out", inv.out_dir, "output directory")->capture_default_str();
    inv.app->add_flag("--quiet", inv.quiet, "suppress the summary");
    if (kind == ExperimentKind::kMiDynamics) {
      inv.app->add_flag("--samples", inv.dump_samples, "also write the raw (x1, x2) samples");
    }
    for (const auto& key : ExperimentConfig::keys()) {
      auto* opt = inv.app->add_option_function<std::string>(
          "--" + key, [&inv, key](const std::string& v) { inv.overrides[key] = v; },
          "override " + key);
      opt->type_name("VALUE");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (const auto& inv : invocations) {
    if (!inv.app->parsed()) continue;
    try {
      return run(inv);
    } catch (const kicktop::ConfigError& e) {
      std::cerr << "ktlab " << kicktop::to_string(inv.kind) << ": invalid configuration: "
                << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "ktlab " << kicktop::to_string(inv.kind) << ": " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
