#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "diracwalk/dynamics.hpp"
#include "diracwalk/spectral.hpp"

namespace diracwalk::app {

/// One output file with the parameters it was computed from.
struct Artifact {
  std::string file;
  std::string kind;   // curve, trajectory, table, script or report
  std::string model;  // empty when the file mixes models
  ModelParams params;
  std::string representation;
  std::string content;
};

Artifact curve_artifact(const std::string& file, const DispersionCurve& curve,
                        const std::string& representation);
Artifact trajectory_artifact(const std::string& file, const Trajectory& traj,
                             const std::string& representation);

/// Column-per-model table over a shared k grid: "k,<label>..." with f values.
std::string combined_table(const std::vector<std::string>& labels,
                           const std::vector<const DispersionCurve*>& curves);

/// Writes every artifact into `dir` (created if needed) in the given order,
/// then manifest.csv listing them. Returns the written paths, manifest last.
/// Throws std::runtime_error on I/O failure.
std::vector<std::filesystem::path> emit_csv(const std::vector<Artifact>& artifacts,
                                            const std::filesystem::path& dir);

}  // namespace diracwalk::app
