#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "diracwalk/lattice.hpp"

namespace diracwalk {

enum class Scheme { one_step, two_step };

struct Trajectory {
  std::vector<LatticeState> states;  // states[j] has step index j
  ModelParams params;
  Scheme scheme = Scheme::one_step;
};

/// Ψ_{j+1} = UΨ_j for `steps` steps; returns steps + 1 states.
Trajectory evolve_one_step(const WalkOperator& walk, const LatticeState& psi0, int steps);

/// Ψ_{j+1} = Ψ_{j−1} + (U − U†)Ψ_j, i.e. i(Ψ_{j+1} − Ψ_{j−1})/2 = HΨ_j.
/// Any Ψ₁ is accepted; Ψ₁ = UΨ₀ reproduces the one-step walk.
Trajectory evolve_two_step(const WalkOperator& walk, const LatticeState& psi0,
                           const LatticeState& psi1, int steps);

enum class Branch { plus, minus };

struct WavePacket {
  double center_k = 0.0;
  /// Standard deviation of the Gaussian momentum weight, in units of the
  /// lattice momentum spacing 2π/(Nε). Zero selects the single lattice
  /// momentum closest to center_k.
  double width = 10.0;
  Branch branch = Branch::plus;
  /// Site the packet is centered on; defaults to N/2.
  std::optional<Eigen::Index> center_site;
  /// Spinor projected onto the branch at every momentum; defaults to the
  /// branch eigenvector of h̃(center_k).
  std::optional<Vector> polarization;
};

/// Normalized superposition Σ_q w(k_q) P_branch(k_q) χ e^{ik_q(p − p_c)ε} over
/// the lattice momenta k_q = 2πq/(Nε), where P_branch is the spectral
/// projector of h̃(k) onto its nonnegative (plus) or negative (minus)
/// eigenvalues. Where h̃ has a zero eigenvalue the projector is taken at a
/// slightly larger k.
LatticeState make_wave_packet(const CoinSet& coins, Eigen::Index sites, const WavePacket& packet);

/// Eigenvector of h̃(k) for its largest (plus) or smallest (minus) eigenvalue.
Vector branch_spinor(const CoinSet& coins, double k, Branch branch);

struct Observables {
  double norm = 0.0;
  std::vector<double> distribution;
  double mean_position = 0.0;
  double std_position = 0.0;
  double center = 0.0;
  /// Largest periodic distance from `center` of a site with p_p > tol, for
  /// the tolerance passed to observables().
  int support_radius = 0;
};

/// Position statistics measured on the ring cut opposite `center` (default
/// N/2, which makes positions equal to site indices). Throws on a zero state.
Observables observables(const LatticeState& psi, std::optional<Eigen::Index> center = std::nullopt,
                        double support_tol = 0.0);

/// Least-squares slope of the mean position against the step index, with the
/// ring cut opposite the initial mean. Needs at least 10 steps.
double group_velocity_estimate(const Trajectory& traj);

/// Rows "step,site,re0..,im0..,prob", prob = |Ψ_p|²/‖Ψ‖².
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace diracwalk
