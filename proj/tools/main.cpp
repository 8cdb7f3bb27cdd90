#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "app/config.hpp"
#include "app/run.hpp"

using namespace diracwalk::app;

namespace {

std::string describe(Experiment e) {
  switch (e) {
    case Experiment::check:
      return "verify algebra, unitarity and Hamiltonian residuals of the coins";
    case Experiment::evolve:
      return "evolve a lattice state and record observables";
    case Experiment::dispersion:
      return "dispersion curve of one model, optionally probing a real frequency";
    case Experiment::doubling:
      return "zeros of the gapless frequency and the raising amplitude";
    case Experiment::slope:
      return "fitted and predicted initial slope";
    case Experiment::sweep:
      return "slope convergence over a list of epsilons";
    case Experiment::figure1:
      return "gapless frequencies of the Dirac, naive, LGT and walk models";
    case Experiment::figure_supplemental:
      return "spatial and temporal doubling curves at a = 1, m = 0.1";
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary quantum-walk discretization of the 1+1D Dirac equation", "diracwalk"};
  app.require_subcommand(1);
  app.footer(config_reference());

  std::string config_path;
  std::string out_dir;
  std::optional<long long> seed;

  auto add_options = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file")->required();
    sub->add_option("-o,--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("-s,--seed", seed, "random seed (overrides seed)")->check(CLI::NonNegativeNumber);
    sub->footer(config_reference());
  };
  std::vector<std::pair<CLI::App*, std::optional<Experiment>>> subs;
  for (Experiment e : all_experiments()) {
    CLI::App* sub = app.add_subcommand(to_string(e), describe(e));
    add_options(sub);
    subs.emplace_back(sub, e);
  }
  CLI::App* any = app.add_subcommand("run", "run the experiment named in the config file");
  add_options(any);
  subs.emplace_back(any, std::nullopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  RunConfig config;
  try {
    config = parse_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  for (const auto& [sub, experiment] : subs) {
    if (!sub->parsed() || !experiment) continue;
    if (*experiment != config.experiment) {
      std::cerr << "error: " << config_path << " configures experiment '" << to_string(config.experiment)
                << "', not '" << to_string(*experiment) << "'\n";
      return kExitError;
    }
  }
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (seed) {
    config.seed = static_cast<std::uint64_t>(*seed);
    config.explicit_keys.insert("seed");
  }

  const RunResult result = run(config, std::cout, std::cerr);
  if (result.exit_code != kExitError) {
    std::cout << "wrote " << result.files.size() << " file(s) to " << config.output_dir.string() << '\n';
  }
  return result.exit_code;
}
