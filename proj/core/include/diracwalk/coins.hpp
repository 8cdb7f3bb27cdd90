#pragma once

#include <iosfwd>

#include "diracwalk/clifford.hpp"
#include "diracwalk/params.hpp"

namespace diracwalk {

/// μ = 1/√(1+ε²m²); ν and η fix V†V = B†B and 2V†V = V†M + M†V.
struct Normalizations {
  double mu = 1.0;
  double nu = 1.0;
  double eta = 1.0;
};

/// Closed-form normalizations. For massive_q0 all three equal μ.
Normalizations normalization_factors(const ModelParams& params);

/// Coefficient of α^λ in V's anti-Hermitian part divided by i: ν ε^ρ r
/// (zero for massive_q0).
double wilson_amplitude(const ModelParams& params);

/// Jump coins (W₋₁, W₀, W₁) of U = W₋₁T⁻¹ + W₁T + W₀ together with the
/// transport coins B = W₁ − W₋₁, V = W₁ + W₋₁, M = V + W₀. Both sets are
/// always consistent; which one was supplied is an implementation detail.
class CoinSet {
 public:
  static CoinSet from_transport(CliffordRep rep, ModelParams params, Normalizations norms,
                                Matrix b, Matrix v, Matrix m);
  static CoinSet from_jumps(CliffordRep rep, ModelParams params, Normalizations norms,
                            Matrix w_minus, Matrix w_zero, Matrix w_plus);

  [[nodiscard]] const CliffordRep& rep() const { return rep_; }
  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] const Normalizations& norms() const { return norms_; }
  [[nodiscard]] Eigen::Index dim() const { return b_.rows(); }

  [[nodiscard]] const Matrix& B() const { return b_; }
  [[nodiscard]] const Matrix& V() const { return v_; }
  [[nodiscard]] const Matrix& M() const { return m_; }
  [[nodiscard]] const Matrix& w_minus() const { return w_minus_; }
  [[nodiscard]] const Matrix& w_zero() const { return w_zero_; }
  [[nodiscard]] const Matrix& w_plus() const { return w_plus_; }

 private:
  CoinSet() = default;

  CliffordRep rep_;
  ModelParams params_;
  Normalizations norms_;
  Matrix b_, v_, m_;
  Matrix w_minus_, w_zero_, w_plus_;
};

/// Builds the coins of either family. Throws InvalidArgument for λ = 1, for
/// λ = 2 without α², or when `rep` fails verify_algebra.
CoinSet build_coins(const CliffordRep& rep, const ModelParams& params);

using ConstraintReport = ResidualReport;

/// Nine residuals: the three jump-level identities from U†U = I, the five
/// transport-level identities, and the max of the three UU† = I identities.
ConstraintReport check_unitarity(const CoinSet& coins, double tol = kExactTolerance);

/// Coin blocks of H = A¹(−iD₁) + W(−L) + εm A⁰, where W is the full
/// coefficient of (−L), i.e. (r/2)Q.
struct HamiltonianBlocks {
  Matrix A0;
  Matrix A1;
  Matrix wilson_block;
};

/// A¹ = (B+B†)/2; A⁰ = μα⁰ and W = (νε^ρ r/2)α^λ from closed forms,
/// cross-checked against εm·A⁰ = i(M−M†)/2 and W = −(i/2)(V−V†)/2. Throws
/// ConsistencyError if a cross-check exceeds `tol`.
HamiltonianBlocks hamiltonian_blocks(const CoinSet& coins, double tol = kExactTolerance);

/// (A⁰)² = μ²I, (A¹)² = η²I, {A⁰,A¹} = 0, {W,A¹} = 0 and Hermiticity.
ResidualReport block_algebra(const HamiltonianBlocks& blocks, const Normalizations& norms,
                             double tol = kExactTolerance);

}  // namespace diracwalk
