#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace diracwalk {

/// Which coin family is built.
///  - massive_q0: V Hermitian (Q = 0), M = μ(1 − iεmα⁰), B = μα¹, V = μ.
///  - wilson:     V = ν(1 + iε^ρ r α^λ), B = η α¹, same M.
enum class Variant { massive_q0, wilson };

/// Which alpha operator carries the Wilson term. alpha1 exists only so that
/// the forbidden choice can be requested and rejected.
enum class WilsonAxis { alpha0 = 0, alpha1 = 1, alpha2 = 2 };

struct ModelParams {
  double epsilon = 0.1;  // time step, equal to the lattice spacing
  double mass = 1.0;
  double wilson_r = 1.0;
  double rho = 0.6;
  WilsonAxis lambda = WilsonAxis::alpha0;
  Variant variant = Variant::wilson;

  /// Throws InvalidArgument if the parameters cannot define a walk.
  /// λ = 1 is rejected here only when `allow_alpha1` is false.
  void validate(bool allow_alpha1 = false) const;

  /// Effective Wilson parameter: 0 for massive_q0, wilson_r otherwise.
  [[nodiscard]] double effective_r() const { return variant == Variant::wilson ? wilson_r : 0.0; }
};

/// Human-readable warnings about parameters that are legal but outside the
/// regime where the walk avoids doublers or beats LGT's slope convergence.
std::vector<std::string> param_warnings(const ModelParams& p);

inline constexpr std::string_view kDoublingWarning = "doubling criterion violated (rho >= 1)";
inline constexpr std::string_view kSlowSlopeWarning =
    "slope convergence not faster than LGT (rho <= 0.5)";

int to_int(WilsonAxis axis);
WilsonAxis wilson_axis_from_int(int value);
std::string to_string(Variant v);
Variant variant_from_string(std::string_view s);

}  // namespace diracwalk
