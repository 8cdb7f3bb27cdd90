#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diracwalk/coins.hpp"

namespace diracwalk {

enum class ModelKind { dirac, naive, lgt, dqw };

/// A dispersion model. `lambda` selects the Wilson axis for lgt and dqw:
/// alpha0 gives the crossed (mass-shifted) form, alpha2 the non-crossed one.
struct ModelTag {
  ModelKind kind = ModelKind::dqw;
  WilsonAxis lambda = WilsonAxis::alpha0;

  static ModelTag dirac() { return {ModelKind::dirac, WilsonAxis::alpha0}; }
  static ModelTag naive() { return {ModelKind::naive, WilsonAxis::alpha0}; }
  static ModelTag lgt(WilsonAxis axis = WilsonAxis::alpha0) { return {ModelKind::lgt, axis}; }
  static ModelTag dqw(WilsonAxis axis = WilsonAxis::alpha0) { return {ModelKind::dqw, axis}; }

  [[nodiscard]] bool is_lattice() const { return kind != ModelKind::dirac; }
  /// "dirac", "naive", "lgt" or "dqw".
  [[nodiscard]] std::string name() const;

  friend bool operator==(const ModelTag&, const ModelTag&) = default;
};

/// Accepts the names produced by ModelTag::name(); λ defaults to alpha0.
ModelTag model_from_string(std::string_view name, WilsonAxis lambda = WilsonAxis::alpha0);

/// Squared frequency F^M(k) in closed form. Lattice models require |k| ≤ π/ε.
double F_of_k(const ModelTag& model, const ModelParams& params, double k);

/// M^M = F^M(0): m² for Dirac, naive and LGT, (μm)² for the walk.
double central_gap(const ModelTag& model, const ModelParams& params);

/// F − M evaluated without cancellation. May be slightly negative for r < 0.
double gapless_squared(const ModelTag& model, const ModelParams& params, double k);

/// f^M(k) = √max(0, F − M).
double gapless_frequency(const ModelTag& model, const ModelParams& params, double k);

struct FrequencyPair {
  double plus = 0.0;
  double minus = 0.0;
};

/// Real solutions of sin²(ωε)/ε² = F^{DQW}(k) on the principal arcsin branch,
/// or std::nullopt (no real frequency) when ε²F > 1. Only the walk has
/// lattice-time frequencies; other models throw InvalidArgument.
std::optional<FrequencyPair> frequency_solutions(const ModelTag& model, const ModelParams& params,
                                                 double k);

struct TemporalDoublers {
  FrequencyPair omega;  // low-frequency pair
  FrequencyPair Omega;  // ±(π/ε − |ω|)
};

/// Solutions of sin²(ωε) = sin²(kε) + ε²m². std::nullopt exactly when
/// ε²m² > cos²(kε).
std::optional<TemporalDoublers> temporal_doublers(const ModelParams& params, double k);

/// Odd-sized, exactly antisymmetric grid over the closed zone [−π/ε, π/ε]
/// containing 0 and both edges.
std::vector<double> brillouin_grid(double epsilon, int points);

/// Hermitian momentum-space symbol of a model in the given representation:
/// Dirac kα¹ + mα⁰, naive adds sin, LGT adds (r/ε)(1 − cos kε)α^λ, and the
/// walk uses momentum_symbol on freshly built coins.
Matrix model_symbol(const ModelTag& model, const CliffordRep& rep, const ModelParams& params,
                    double k);

/// Largest squared eigenvalue of model_symbol: the diagonalization route to F.
double symbol_F(const ModelTag& model, const CliffordRep& rep, const ModelParams& params,
                double k);

struct DispersionCurve {
  ModelTag model;
  ModelParams params;
  std::vector<double> k;
  std::vector<double> F;
  std::vector<double> f;
  double central_gap = 0.0;
};

/// Closed-form curve over brillouin_grid(ε, points).
DispersionCurve dispersion_curve(const ModelTag& model, const ModelParams& params, int points);

/// The same curve computed from the symbol matrices in representation `rep`,
/// using h̃(k)² = F(k)·I: F = ‖h̃‖²/d and f² from h̃(k) − h̃(0) without
/// subtracting the gap.
DispersionCurve symbol_dispersion_curve(const ModelTag& model, const CliffordRep& rep,
                                        const ModelParams& params, int points);

/// (ν r ε^{ρ−1})² for the walk, (r/ε)² for LGT, 0 for Dirac, naive and massive_q0.
double raising_amplitude(const ModelTag& model, const ModelParams& params);

struct DoublingReport {
  ModelTag model;
  ModelParams params;
  std::vector<double> zeros;
  int zero_count = 0;
  double edge_value = 0.0;
  double raising_amplitude = 0.0;
  bool doubling_avoided = false;
  std::vector<std::string> warnings;
};

/// Zeros of f on the closed zone: f < 1e-6·π/ε, merged when within 3 cells.
/// Requires an odd grid of at least 101 points.
DoublingReport doubling_report(const ModelTag& model, const ModelParams& params, int grid_points);

struct RaisingSweep {
  std::vector<double> epsilons;
  std::vector<double> amplitudes;
  /// Amplitude strictly decreases as ε decreases.
  bool decaying = false;
  /// Amplitude never decreases as ε decreases.
  bool bounded_below = false;
  std::vector<std::string> warnings;
};

/// Raising amplitude along a strictly decreasing ε list (at least 2 values).
RaisingSweep raising_amplitude_sweep(const ModelTag& model, const ModelParams& base,
                                     const std::vector<double>& epsilons);

struct SlopeReport {
  ModelTag model;
  ModelParams params;
  double fitted_slope = 0.0;
  double predicted_slope = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double relative_error = 0.0;
};

/// Upper end K of the slope-fit window |k| ≤ K: min(0.05/ε, 0.5).
double slope_window(double epsilon);

/// 1 − ½r²ε^{2ρ} for the walk (1 for massive_q0), 1 + εmr for crossed LGT,
/// 1 otherwise.
double predicted_slope(const ModelTag& model, const ModelParams& params);

/// Least-squares fit f² ≈ s·k² on 20 points k_j = K·j/20.
SlopeReport initial_slope(const ModelTag& model, const ModelParams& params);

/// max |f²_LGT − [(1 + εmr)k² + (¼ε²r² − ⅓ε²)k⁴]| over 64 points in (0, k_max].
double lgt_quartic_check(const ModelParams& params, double k_max);

struct ConvergenceRow {
  double epsilon = 0.0;
  double fitted_slope = 0.0;
  double predicted_slope = 0.0;
  double error = 0.0;           // |fitted − 1|
  double relative_error = 0.0;  // |fitted − predicted| / |predicted|
  double lambda_gap = 0.0;      // |fitted(λ=0) − fitted(λ=2)|, walk only; NaN otherwise
};

struct ConvergenceStudy {
  ModelTag model;
  ModelParams base;
  std::vector<ConvergenceRow> rows;
  double order = 0.0;           // d log(error) / d log(ε)
  double order_residual = 0.0;  // RMS residual of the log-log fit
  bool error_monotone = false;
  bool relative_error_monotone = false;
  std::vector<std::string> warnings;
};

/// Requires at least 3 strictly decreasing ε values and nonzero errors.
ConvergenceStudy convergence_study(const ModelTag& model, const ModelParams& base,
                                   const std::vector<double>& epsilons);

/// Header "model,epsilon,m,r,rho,lambda", its values, then "k,F,f" rows.
void write_dispersion_csv(std::ostream& os, const DispersionCurve& curve);

}  // namespace diracwalk
