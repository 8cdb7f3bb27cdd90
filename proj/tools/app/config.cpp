#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace diracwalk::app {

namespace {

const std::vector<std::pair<Experiment, std::string_view>> kExperimentNames{
    {Experiment::check, "check"},
    {Experiment::evolve, "evolve"},
    {Experiment::dispersion, "dispersion"},
    {Experiment::doubling, "doubling"},
    {Experiment::slope, "slope"},
    {Experiment::sweep, "sweep"},
    {Experiment::figure1, "figure1"},
    {Experiment::figure_supplemental, "figure-supplemental"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class LineParser {
 public:
  LineParser(const std::string& origin, int line) : origin_(origin), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(origin_ + ":" + std::to_string(line_) + ": " + what);
  }

  double real(std::string_view key, std::string_view v) const {
    double x = 0.0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(x)) {
      fail(std::string(key) + " expects a real number, got '" + std::string(v) + "'");
    }
    return x;
  }

  long long integer(std::string_view key, std::string_view v) const {
    long long x = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size()) {
      fail(std::string(key) + " expects an integer, got '" + std::string(v) + "'");
    }
    return x;
  }

  std::vector<double> reals(std::string_view key, std::string_view v) const {
    std::vector<double> out;
    std::string text(v);
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::string token;
    while (in >> token) out.push_back(real(key, token));
    if (out.empty()) fail(std::string(key) + " expects a list of real numbers");
    return out;
  }

  template <typename T>
  T choice(std::string_view key, std::string_view v,
           std::initializer_list<std::pair<std::string_view, T>> options) const {
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (name == v) return value;
      allowed += (allowed.empty() ? "" : "|") + std::string(name);
    }
    fail(std::string(key) + " expects one of " + allowed + ", got '" + std::string(v) + "'");
  }

 private:
  const std::string& origin_;
  int line_;
};

std::string lambda_error() {
  return "lambda = 1 is not allowed: the Wilson term on alpha^1 breaks the unitarity condition "
         "B^dag V = V^dag B (lambda must be 0 or 2)";
}

void apply(RunConfig& c, std::string_view key, std::string_view v, const LineParser& lp,
           const std::filesystem::path& base_dir) {
  if (key == "experiment") {
    const auto e = experiment_from_string(v);
    if (!e) lp.fail("unknown experiment '" + std::string(v) + "'");
    c.experiment = *e;
  } else if (key == "epsilon") {
    c.params.epsilon = lp.real(key, v);
    if (!(c.params.epsilon > 0.0)) lp.fail("epsilon must be positive");
  } else if (key == "mass") {
    c.params.mass = lp.real(key, v);
  } else if (key == "wilson_r") {
    c.params.wilson_r = lp.real(key, v);
  } else if (key == "rho") {
    c.params.rho = lp.real(key, v);
    if (!(c.params.rho > 0.0)) lp.fail("rho must be positive (got " + std::string(v) + ")");
  } else if (key == "lambda") {
    const long long l = lp.integer(key, v);
    if (l == 1) lp.fail(lambda_error());
    if (l != 0 && l != 2) lp.fail("lambda must be 0 or 2 (got " + std::string(v) + ")");
    c.params.lambda = wilson_axis_from_int(static_cast<int>(l));
  } else if (key == "variant") {
    c.params.variant = lp.choice<Variant>(
        key, v, {{"wilson", Variant::wilson}, {"massive_q0", Variant::massive_q0}});
  } else if (key == "model") {
    c.model = lp.choice<ModelKind>(key, v,
                                   {{"dirac", ModelKind::dirac},
                                    {"naive", ModelKind::naive},
                                    {"lgt", ModelKind::lgt},
                                    {"dqw", ModelKind::dqw}});
  } else if (key == "representation") {
    c.rep_source = lp.choice<RepSource>(
        key, v, {{"pauli", RepSource::pauli}, {"file", RepSource::file}, {"random", RepSource::random}});
  } else if (key == "representation_file") {
    std::filesystem::path p(v);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    if (!std::filesystem::is_regular_file(p)) {
      lp.fail("representation_file '" + p.string() + "' does not exist");
    }
    c.representation_file = p;
  } else if (key == "seed") {
    const long long s = lp.integer(key, v);
    if (s < 0) lp.fail("seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "sites") {
    const long long n = lp.integer(key, v);
    if (n < 3) lp.fail("sites must be at least 3 (got " + std::string(v) + ")");
    c.sites = static_cast<Eigen::Index>(n);
  } else if (key == "grid_points") {
    const long long n = lp.integer(key, v);
    if (n < 3 || n % 2 == 0) lp.fail("grid_points must be odd and at least 3 (got " + std::string(v) + ")");
    c.grid_points = static_cast<int>(n);
  } else if (key == "steps") {
    const long long n = lp.integer(key, v);
    if (n < 0) lp.fail("steps must be nonnegative");
    c.steps = static_cast<int>(n);
  } else if (key == "scheme") {
    c.scheme = lp.choice<Scheme>(key, v, {{"one_step", Scheme::one_step}, {"two_step", Scheme::two_step}});
  } else if (key == "epsilons") {
    c.epsilons = lp.reals(key, v);
    for (double e : c.epsilons) {
      if (!(e > 0.0)) lp.fail("epsilons must all be positive");
    }
  } else if (key == "initial_state") {
    c.initial_state = lp.choice<InitialState>(
        key, v,
        {{"packet", InitialState::packet}, {"delta", InitialState::delta}, {"random", InitialState::random}});
  } else if (key == "packet_k0") {
    c.packet_k0 = lp.real(key, v);
  } else if (key == "packet_width") {
    c.packet_width = lp.real(key, v);
    if (c.packet_width < 0.0) lp.fail("packet_width must be nonnegative");
  } else if (key == "packet_branch") {
    c.packet_branch = lp.choice<Branch>(key, v, {{"plus", Branch::plus}, {"minus", Branch::minus}});
  } else if (key == "probe_k") {
    c.probe_k = lp.real(key, v);
  } else if (key == "output_dir") {
    c.output_dir = std::filesystem::path(v);
  } else if (key == "tolerance") {
    c.tolerance = lp.real(key, v);
    if (!(c.tolerance > 0.0)) lp.fail("tolerance must be positive");
  }
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [value, name] : kExperimentNames) {
    if (value == e) return std::string(name);
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_string(std::string_view s) {
  for (const auto& [value, name] : kExperimentNames) {
    if (name == s) return value;
  }
  return std::nullopt;
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> out;
    for (const auto& entry : kExperimentNames) out.push_back(entry.first);
    return out;
  }();
  return all;
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys{
      {"experiment", "", "name", "(required)",
       "check | evolve | dispersion | doubling | slope | sweep | figure1 | figure-supplemental"},
      {"epsilon", "eps", "real > 0", "0.1", "time step, equal to the lattice spacing"},
      {"mass", "m", "real", "1", "particle mass"},
      {"wilson_r", "r", "real", "1", "Wilson parameter"},
      {"rho", "", "real > 0", "0.6", "Wilson exponent; rho < 1 avoids doubling"},
      {"lambda", "", "0 | 2", "0", "alpha operator carrying the Wilson term (1 breaks unitarity)"},
      {"variant", "", "wilson | massive_q0", "wilson", "coin family"},
      {"model", "", "dirac | naive | lgt | dqw", "dqw",
       "dispersion model for dispersion, doubling, slope and sweep"},
      {"representation", "", "pauli | file | random", "pauli", "Clifford representation"},
      {"representation_file", "", "path", "", "matrices alpha0, alpha1[, alpha2] for representation = file"},
      {"seed", "", "integer >= 0", "1", "seed for representation = random and initial_state = random"},
      {"sites", "N", "integer >= 3", "128", "periodic lattice size"},
      {"grid_points", "", "odd integer", "1001", "Brillouin-zone grid size"},
      {"steps", "", "integer >= 0", "100", "evolution steps"},
      {"scheme", "", "one_step | two_step", "one_step", "evolution scheme (two_step is seeded with U psi0)"},
      {"epsilons", "", "list of reals", "0.1, 0.03, 0.01, 0.003",
       "decreasing time steps for sweep, and for the doubling amplitude sweep"},
      {"initial_state", "", "packet | delta | random", "packet", "initial state for evolve"},
      {"packet_k0", "", "real", "0", "packet central momentum"},
      {"packet_width", "", "real >= 0", "10", "packet width in units of 2 pi/(N epsilon)"},
      {"packet_branch", "", "plus | minus", "plus", "frequency branch of the packet"},
      {"probe_k", "", "real", "", "momentum at which dispersion requires a real frequency"},
      {"output_dir", "", "path", "out", "directory for CSV files, report and manifest"},
      {"tolerance", "", "real > 0", "1e-12", "residual tolerance for constraint checks"},
  };
  return keys;
}

std::string config_reference() {
  std::ostringstream os;
  os << "Config file: one 'key = value' per line, '#' starts a comment.\n\nKeys:\n";
  for (const KeyInfo& k : config_keys()) {
    std::string name(k.key);
    if (!k.alias.empty()) name += " (" + std::string(k.alias) + ")";
    os << "  " << name << std::string(name.size() < 26 ? 26 - name.size() : 1, ' ') << k.type;
    if (!k.fallback.empty()) os << ", default " << k.fallback;
    os << "\n      " << k.help << '\n';
  }
  os << "\nExit codes: 0 success, 1 I/O or configuration error, 2 constraint check failed,\n"
        "3 no real frequency where one was required.\n";
  return os.str();
}

RunConfig parse_config_text(std::string_view text, const std::string& origin,
                            const std::filesystem::path& base_dir) {
  std::map<std::string_view, std::string_view> canonical;
  for (const KeyInfo& k : config_keys()) {
    canonical[k.key] = k.key;
    if (!k.alias.empty()) canonical[k.alias] = k.key;
  }

  RunConfig c;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const LineParser lp(origin, line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) lp.fail("expected 'key = value', got '" + std::string(line) + "'");
    const std::string_view raw_key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = canonical.find(raw_key);
    if (it == canonical.end()) lp.fail("unknown key '" + std::string(raw_key) + "'");
    const std::string key(it->second);
    if (const auto prev = seen.find(key); prev != seen.end()) {
      lp.fail("duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
    }
    if (value.empty()) lp.fail("missing value for '" + key + "'");
    seen[key] = line_no;
    apply(c, key, value, lp, base_dir);
    c.explicit_keys.insert(key);
  }

  if (!c.has("experiment")) throw ConfigError(origin + ": experiment missing");
  if (c.rep_source == RepSource::file && c.representation_file.empty()) {
    throw ConfigError(origin + ":" + std::to_string(seen["representation"]) +
                      ": representation = file requires representation_file");
  }
  if (c.experiment == Experiment::figure_supplemental) {
    if (!c.has("epsilon")) c.params.epsilon = 1.0;
    if (!c.has("mass")) c.params.mass = 0.1;
  }
  if (!c.has("epsilons")) c.epsilons = {0.1, 0.03, 0.01, 0.003};
  try {
    c.params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot read config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string(), path.parent_path());
}

CliffordRep resolve_representation(const RunConfig& config) {
  switch (config.rep_source) {
    case RepSource::file:
      return load_representation(config.representation_file);
    case RepSource::random:
      return conjugate(pauli_representation(), random_unitary(2, config.seed));
    case RepSource::pauli:
      break;
  }
  return pauli_representation();
}

std::string describe_representation(const RunConfig& config) {
  switch (config.rep_source) {
    case RepSource::file:
      return "file(" + config.representation_file.filename().string() + ")";
    case RepSource::random:
      return "random(seed=" + std::to_string(config.seed) + ")";
    case RepSource::pauli:
      break;
  }
  return "pauli";
}

}  // namespace diracwalk::app
