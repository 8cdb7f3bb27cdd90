#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diracwalk/dynamics.hpp"
#include "diracwalk/spectral.hpp"

namespace diracwalk::app {

enum class Experiment { check, evolve, dispersion, doubling, slope, sweep, figure1, figure_supplemental };

std::string to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view s);
const std::vector<Experiment>& all_experiments();

enum class RepSource { pauli, file, random };
enum class InitialState { packet, delta, random };

/// Malformed or invalid configuration. The message carries "path:line: ".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Experiment experiment = Experiment::check;
  ModelParams params;
  ModelKind model = ModelKind::dqw;

  RepSource rep_source = RepSource::pauli;
  std::filesystem::path representation_file;
  std::uint64_t seed = 1;

  Eigen::Index sites = 128;
  int grid_points = 1001;
  int steps = 100;
  Scheme scheme = Scheme::one_step;
  std::vector<double> epsilons;

  InitialState initial_state = InitialState::packet;
  double packet_k0 = 0.0;
  double packet_width = 10.0;
  Branch packet_branch = Branch::plus;

  std::optional<double> probe_k;
  std::filesystem::path output_dir = "out";
  double tolerance = kExactTolerance;

  /// Canonical names of the keys that appeared in the file.
  std::set<std::string> explicit_keys;

  [[nodiscard]] bool has(std::string_view key) const { return explicit_keys.contains(std::string(key)); }
  [[nodiscard]] ModelTag model_tag() const { return {model, params.lambda}; }
};

struct KeyInfo {
  std::string_view key;
  std::string_view alias;
  std::string_view type;
  std::string_view fallback;
  std::string_view help;
};

const std::vector<KeyInfo>& config_keys();

/// Reference text for every key, used by --help.
std::string config_reference();

/// Parses flat "key = value" text; '#' starts a comment. Relative
/// representation_file paths resolve against `base_dir`.
RunConfig parse_config_text(std::string_view text, const std::string& origin,
                            const std::filesystem::path& base_dir = {});

RunConfig parse_config(const std::filesystem::path& path);

/// The representation selected by the config.
CliffordRep resolve_representation(const RunConfig& config);

/// "pauli", "random(seed=N)" or "file(name)".
std::string describe_representation(const RunConfig& config);

}  // namespace diracwalk::app
