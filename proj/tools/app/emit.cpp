#include "emit.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace diracwalk::app {

Artifact curve_artifact(const std::string& file, const DispersionCurve& curve,
                        const std::string& representation) {
  std::ostringstream os;
  write_dispersion_csv(os, curve);
  std::string model = curve.model.name();
  if (curve.model.is_lattice() && curve.model.kind != ModelKind::naive) {
    model += "(lambda=" + std::to_string(to_int(curve.model.lambda)) + ")";
  }
  return {file, "curve", model, curve.params, representation, os.str()};
}

Artifact trajectory_artifact(const std::string& file, const Trajectory& traj,
                             const std::string& representation) {
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  return {file, "trajectory", "dqw", traj.params, representation, os.str()};
}

std::string combined_table(const std::vector<std::string>& labels,
                           const std::vector<const DispersionCurve*>& curves) {
  if (labels.size() != curves.size() || curves.empty()) {
    throw InvalidArgument("combined_table: one label per curve required");
  }
  for (const DispersionCurve* c : curves) {
    if (c->k != curves.front()->k) throw InvalidArgument("combined_table: curves use different grids");
  }
  std::ostringstream os;
  os << 'k';
  for (const std::string& l : labels) os << ',' << l;
  os << '\n';
  const auto& k = curves.front()->k;
  for (std::size_t i = 0; i < k.size(); ++i) {
    os << format_double(k[i]);
    for (const DispersionCurve* c : curves) os << ',' << format_double(c->f[i]);
    os << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_csv(const std::vector<Artifact>& artifacts,
                                            const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& content) {
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path);
  };

  std::ostringstream manifest;
  manifest << "file,kind,model,variant,epsilon,m,r,rho,lambda,representation\n";
  for (const Artifact& a : artifacts) {
    write(a.file, a.content);
    const ModelParams& p = a.params;
    manifest << a.file << ',' << a.kind << ',' << a.model << ',' << to_string(p.variant) << ','
             << format_double(p.epsilon) << ',' << format_double(p.mass) << ','
             << format_double(p.wilson_r) << ',' << format_double(p.rho) << ',' << to_int(p.lambda)
             << ',' << a.representation << '\n';
  }
  write("manifest.csv", manifest.str());
  return written;
}

}  // namespace diracwalk::app
