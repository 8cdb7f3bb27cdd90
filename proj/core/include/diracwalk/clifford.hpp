#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "diracwalk/linalg.hpp"

namespace diracwalk {

/// A finite-dimensional representation of the alpha operators of the 1+1D
/// Dirac equation: (α⁰)² = (α¹)² = I, {α⁰, α¹} = 0, all Hermitian. The
/// optional α² anticommutes with both and is needed by the λ = 2 Wilson walk.
struct CliffordRep {
  Matrix alpha0;
  Matrix alpha1;
  std::optional<Matrix> alpha2;
  std::string label;

  [[nodiscard]] Eigen::Index dim() const { return alpha0.rows(); }
  [[nodiscard]] bool has_alpha2() const { return alpha2.has_value(); }
};

using AlgebraReport = ResidualReport;

/// α⁰ = σ₁, α¹ = σ₃, α² = σ₂.
CliffordRep pauli_representation();

/// Residuals for (αⁱ)² = I, pairwise anticommutation and Hermiticity.
/// Throws InvalidArgument when the matrices are not square or differ in size.
AlgebraReport verify_algebra(const CliffordRep& rep, double tol = kExactTolerance);

/// αⁱ ↦ S αⁱ S†. Throws if S is not unitary within `tol` or has the wrong size.
CliffordRep conjugate(const CliffordRep& rep, const Matrix& s, double tol = kExactTolerance);

/// Haar-distributed d×d unitary from QR of a seeded complex Gaussian matrix,
/// with the phases of R's diagonal folded back into Q.
Matrix random_unitary(Eigen::Index d, std::uint64_t seed);

struct GammaOperators {
  Matrix gamma0;          // α⁰/μ
  Matrix gamma1;          // α⁰α¹
  Eigen::Matrix2d metric; // diag(1/μ², −1)
  double residual = 0.0;  // max over (μ,ν) of ‖{Γ^μ,Γ^ν} − 2η̃^{μν} I‖
};

GammaOperators gamma_operators(const CliffordRep& rep, double mu);

/// Reads α⁰, α¹ and optionally α² from a text file in the format of
/// read_matrices_text (matrices separated by blank lines).
CliffordRep load_representation(const std::filesystem::path& path);
void save_representation(const std::filesystem::path& path, const CliffordRep& rep);

/// Block-diagonal copy of `rep` repeated `copies` times (a reducible
/// representation of dimension copies·d).
CliffordRep direct_sum(const CliffordRep& rep, Eigen::Index copies);

}  // namespace diracwalk
