#pragma once

#include <span>
#include <vector>

#include "diracwalk/coins.hpp"

namespace diracwalk {

// Conventions: sites p = 0..N−1 with periodic wraparound, lattice spacing
// a = ε. The shift acts as (T₁Ψ)_p = Ψ_{p−1}, so on plane waves
// Ψ_p = e^{ikpε} we have T₁ → e^{−ikε}, −iD₁ → sin(kε) and −L → 2(1 − cos kε).

/// Spinor field on an N-site ring. Amplitudes are stored d×N, one column per
/// site, so the flattened index of component c at site p is p·d + c.
class LatticeState {
 public:
  LatticeState() = default;
  LatticeState(Eigen::Index sites, Eigen::Index dim, long step = 0);
  LatticeState(Matrix amplitudes, long step);

  /// Single-site state with the given spinor at `site`.
  static LatticeState delta(Eigen::Index sites, Eigen::Index site, const Vector& spinor);

  [[nodiscard]] Eigen::Index sites() const { return amps_.cols(); }
  [[nodiscard]] Eigen::Index dim() const { return amps_.rows(); }
  [[nodiscard]] long step() const { return step_; }
  void set_step(long step) { step_ = step; }

  [[nodiscard]] const Matrix& amplitudes() const { return amps_; }
  Matrix& amplitudes() { return amps_; }
  [[nodiscard]] auto spinor(Eigen::Index p) const { return amps_.col(p); }
  auto spinor(Eigen::Index p) { return amps_.col(p); }

  [[nodiscard]] double norm() const { return amps_.norm(); }
  [[nodiscard]] Vector flattened() const;

 private:
  Matrix amps_;
  long step_ = 0;
};

/// U = W₋₁T₁⁻¹ + W₁T₁ + W₀ on an N-site ring, stored as its three coin blocks:
/// (UΨ)_p = W₋₁Ψ_{p+1} + W₁Ψ_{p−1} + W₀Ψ_p.
class WalkOperator {
 public:
  WalkOperator(CoinSet coins, Eigen::Index sites);

  [[nodiscard]] const CoinSet& coins() const { return coins_; }
  [[nodiscard]] Eigen::Index sites() const { return sites_; }
  [[nodiscard]] Eigen::Index dim() const { return coins_.dim(); }

  /// UΨ; the result carries step + 1.
  [[nodiscard]] LatticeState apply(const LatticeState& psi) const;
  /// U†Ψ; the result carries the input step.
  [[nodiscard]] LatticeState apply_adjoint(const LatticeState& psi) const;

 private:
  void check(const LatticeState& psi) const;

  CoinSet coins_;
  Eigen::Index sites_;
};

/// Throws InvalidArgument for N < 3.
WalkOperator build_walk_operator(const CoinSet& coins, Eigen::Index sites);

/// Dense (N·d)×(N·d) matrix of U assembled from shift matrices. Only for
/// cross-checks; refuses N > 64.
Matrix dense_walk_matrix(const WalkOperator& walk);

/// H = (i/2)(U − U†) as a periodic block band:
/// (HΨ)_p = minus·Ψ_{p+1} + plus·Ψ_{p−1} + diagonal·Ψ_p.
class LocalHamiltonian {
 public:
  LocalHamiltonian(HamiltonianBlocks blocks, Eigen::Index sites, Matrix minus, Matrix diagonal,
                   Matrix plus);

  [[nodiscard]] const HamiltonianBlocks& blocks() const { return blocks_; }
  [[nodiscard]] Eigen::Index sites() const { return sites_; }
  [[nodiscard]] const Matrix& minus() const { return minus_; }
  [[nodiscard]] const Matrix& diagonal() const { return diagonal_; }
  [[nodiscard]] const Matrix& plus() const { return plus_; }

  [[nodiscard]] LatticeState apply(const LatticeState& psi) const;
  /// max(‖minus − plus†‖, ‖diagonal − diagonal†‖): zero iff H is Hermitian.
  [[nodiscard]] double hermiticity_residual() const;
  /// Dense matrix, N ≤ 64 only.
  [[nodiscard]] Matrix dense() const;

 private:
  HamiltonianBlocks blocks_;
  Eigen::Index sites_;
  Matrix minus_, diagonal_, plus_;
};

/// Builds H twice, from (i/2)(U − U†) and from A¹(−iD₁) + W(−L) + εmA⁰, and
/// throws ConsistencyError if the band blocks differ by more than `tol` or H
/// is not Hermitian within `tol`.
LocalHamiltonian local_hamiltonian(const WalkOperator& walk, double tol = kExactTolerance);

/// h̃(k) = A¹ sin(kε)/ε + m A⁰ + W·2(1 − cos kε)/ε, the symbol of h = H/ε.
/// Throws InvalidArgument for |k| > π/ε.
Matrix momentum_symbol(const CoinSet& coins, double k);

/// Ũ(k) = W₋₁e^{ikε} + W₁e^{−ikε} + W₀, the symbol of the walk itself.
Matrix walk_symbol(const CoinSet& coins, double k);

/// max over the grid of ‖h̃(k)² − F(k)·I‖ with F the closed-form walk dispersion.
double symbol_square_residual(const CoinSet& coins, std::span<const double> k_grid);

/// Lattice momentum 2πq/(Nε) folded into [−π/ε, π/ε).
double lattice_momentum(long q, Eigen::Index sites, double epsilon);

/// Throws InvalidArgument for |k| > π/ε (with a 1e-12 relative slack).
void require_in_brillouin_zone(double k, double epsilon, const char* where);

}  // namespace diracwalk
