#include "diracwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "diracwalk/lattice.hpp"

namespace diracwalk {

namespace {

constexpr double kPi = std::numbers::pi;

void check_zone(const ModelTag& model, const ModelParams& params, double k) {
  if (model.is_lattice()) require_in_brillouin_zone(k, params.epsilon, "dispersion");
}

void check_axis(const ModelTag& model) {
  if (model.lambda == WilsonAxis::alpha1) {
    throw InvalidArgument("lambda = 1 is not a valid Wilson axis");
  }
}

ModelParams walk_params(const ModelTag& model, const ModelParams& params) {
  ModelParams p = params;
  p.lambda = model.lambda;
  p.validate();
  return p;
}

// sin(kε)/ε
double transport(double eps, double k) { return std::sin(k * eps) / eps; }

// 1 − cos(kε), written to keep full relative accuracy near k = 0.
double one_minus_cos(double eps, double k) {
  const double h = std::sin(0.5 * k * eps);
  return 2.0 * h * h;
}

struct WalkTerms {
  double eta;     // coefficient of sin(kε)/ε
  double mass;    // μm
  double wilson;  // νε^ρ(r/ε)(1 − cos kε)
};

WalkTerms walk_terms(const ModelParams& p, double k) {
  const Normalizations n = normalization_factors(p);
  const double amp = wilson_amplitude(p) / p.epsilon;
  return {n.eta, n.mu * p.mass, amp * one_minus_cos(p.epsilon, k)};
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace

std::string ModelTag::name() const {
  switch (kind) {
    case ModelKind::dirac:
      return "dirac";
    case ModelKind::naive:
      return "naive";
    case ModelKind::lgt:
      return "lgt";
    case ModelKind::dqw:
      return "dqw";
  }
  return "unknown";
}

ModelTag model_from_string(std::string_view name, WilsonAxis lambda) {
  if (name == "dirac") return ModelTag::dirac();
  if (name == "naive") return ModelTag::naive();
  if (name == "lgt") return ModelTag::lgt(lambda);
  if (name == "dqw") return ModelTag::dqw(lambda);
  throw InvalidArgument("model must be one of dirac, naive, lgt, dqw (got '" + std::string(name) +
                        "')");
}

double F_of_k(const ModelTag& model, const ModelParams& params, double k) {
  check_axis(model);
  check_zone(model, params, k);
  const double eps = params.epsilon;
  const double m = params.mass;
  switch (model.kind) {
    case ModelKind::dirac:
      return k * k + m * m;
    case ModelKind::naive: {
      const double s = transport(eps, k);
      return s * s + m * m;
    }
    case ModelKind::lgt: {
      const double s = transport(eps, k);
      const double w = params.wilson_r / eps * one_minus_cos(eps, k);
      if (model.lambda == WilsonAxis::alpha0) return s * s + (m + w) * (m + w);
      return s * s + m * m + w * w;
    }
    case ModelKind::dqw: {
      const ModelParams p = walk_params(model, params);
      const WalkTerms t = walk_terms(p, k);
      const double s = t.eta * transport(eps, k);
      if (p.variant == Variant::wilson && p.lambda == WilsonAxis::alpha0) {
        return s * s + (t.mass + t.wilson) * (t.mass + t.wilson);
      }
      return s * s + t.mass * t.mass + t.wilson * t.wilson;
    }
  }
  return 0.0;
}

double central_gap(const ModelTag& model, const ModelParams& params) {
  return F_of_k(model, params, 0.0);
}

double gapless_squared(const ModelTag& model, const ModelParams& params, double k) {
  check_axis(model);
  check_zone(model, params, k);
  const double eps = params.epsilon;
  const double m = params.mass;
  switch (model.kind) {
    case ModelKind::dirac:
      return k * k;
    case ModelKind::naive: {
      const double s = transport(eps, k);
      return s * s;
    }
    case ModelKind::lgt: {
      const double s = transport(eps, k);
      const double w = params.wilson_r / eps * one_minus_cos(eps, k);
      if (model.lambda == WilsonAxis::alpha0) return s * s + w * (2.0 * m + w);
      return s * s + w * w;
    }
    case ModelKind::dqw: {
      const ModelParams p = walk_params(model, params);
      const WalkTerms t = walk_terms(p, k);
      const double s = t.eta * transport(eps, k);
      if (p.variant == Variant::wilson && p.lambda == WilsonAxis::alpha0) {
        return s * s + t.wilson * (2.0 * t.mass + t.wilson);
      }
      return s * s + t.wilson * t.wilson;
    }
  }
  return 0.0;
}

double gapless_frequency(const ModelTag& model, const ModelParams& params, double k) {
  return std::sqrt(std::max(0.0, gapless_squared(model, params, k)));
}

std::optional<FrequencyPair> frequency_solutions(const ModelTag& model, const ModelParams& params,
                                                 double k) {
  if (model.kind != ModelKind::dqw) {
    throw InvalidArgument("frequency_solutions: lattice-time frequencies exist only for the walk");
  }
  const double x = params.epsilon * std::sqrt(F_of_k(model, params, k));
  if (!(x <= 1.0)) return std::nullopt;
  const double w = std::asin(x) / params.epsilon;
  return FrequencyPair{w, -w};
}

std::optional<TemporalDoublers> temporal_doublers(const ModelParams& params, double k) {
  params.validate();
  require_in_brillouin_zone(k, params.epsilon, "temporal_doublers");
  const double eps = params.epsilon;
  const double em = eps * params.mass;
  const double c = std::cos(k * eps);
  if (em * em > c * c) return std::nullopt;
  const double s = std::sin(k * eps);
  const double w = std::asin(std::min(1.0, std::sqrt(s * s + em * em))) / eps;
  const double big = kPi / eps - w;
  return TemporalDoublers{{w, -w}, {big, -big}};
}

std::vector<double> brillouin_grid(double epsilon, int points) {
  if (points < 3 || points % 2 == 0) {
    throw InvalidArgument("brillouin_grid: points must be odd and at least 3");
  }
  if (!(epsilon > 0.0)) throw InvalidArgument("brillouin_grid: epsilon must be positive");
  const int half = points / 2;
  const double edge = kPi / epsilon;
  std::vector<double> k(static_cast<std::size_t>(points));
  k[static_cast<std::size_t>(half)] = 0.0;
  for (int i = 1; i <= half; ++i) {
    const double v = edge * (static_cast<double>(i) / static_cast<double>(half));
    k[static_cast<std::size_t>(half + i)] = v;
    k[static_cast<std::size_t>(half - i)] = -v;
  }
  return k;
}

Matrix model_symbol(const ModelTag& model, const CliffordRep& rep, const ModelParams& params,
                    double k) {
  check_axis(model);
  check_zone(model, params, k);
  const double eps = params.epsilon;
  const double m = params.mass;
  switch (model.kind) {
    case ModelKind::dirac:
      return k * rep.alpha1 + m * rep.alpha0;
    case ModelKind::naive:
      return transport(eps, k) * rep.alpha1 + m * rep.alpha0;
    case ModelKind::lgt: {
      const double w = params.wilson_r / eps * one_minus_cos(eps, k);
      const Matrix* axis = &rep.alpha0;
      if (model.lambda == WilsonAxis::alpha2) {
        if (!rep.alpha2) throw InvalidArgument("lambda = 2 requires a representation with alpha2");
        axis = &*rep.alpha2;
      }
      return transport(eps, k) * rep.alpha1 + m * rep.alpha0 + w * *axis;
    }
    case ModelKind::dqw:
      return momentum_symbol(build_coins(rep, walk_params(model, params)), k);
  }
  return {};
}

double symbol_F(const ModelTag& model, const CliffordRep& rep, const ModelParams& params,
                double k) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(model_symbol(model, rep, params, k),
                                                 Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return top * top;
}

DispersionCurve dispersion_curve(const ModelTag& model, const ModelParams& params, int points) {
  DispersionCurve c;
  c.model = model;
  c.params = params;
  c.k = brillouin_grid(params.epsilon, points);
  c.central_gap = central_gap(model, params);
  c.F.reserve(c.k.size());
  c.f.reserve(c.k.size());
  for (double k : c.k) {
    c.F.push_back(F_of_k(model, params, k));
    c.f.push_back(gapless_frequency(model, params, k));
  }
  return c;
}

DispersionCurve symbol_dispersion_curve(const ModelTag& model, const CliffordRep& rep,
                                        const ModelParams& params, int points) {
  DispersionCurve c;
  c.model = model;
  c.params = params;
  c.k = brillouin_grid(params.epsilon, points);
  std::optional<CoinSet> coins;
  if (model.kind == ModelKind::dqw) coins = build_coins(rep, walk_params(model, params));
  auto symbol = [&](double k) {
    return coins ? momentum_symbol(*coins, k) : model_symbol(model, rep, params, k);
  };
  // h(k)² = F(k)·I, so F = ‖h‖²/d and F − F(0) = (‖Δ‖² + 2 Re tr(Δ h(0)))/d with Δ = h(k) − h(0).
  // Away from the walk the mass enters linearly, so Δ is the massless symbol.
  ModelParams massless = params;
  massless.mass = 0.0;
  auto kinetic = [&](double k) -> Matrix {
    if (coins) return momentum_symbol(*coins, k) - momentum_symbol(*coins, 0.0);
    return model_symbol(model, rep, massless, k);
  };
  const Matrix h0 = symbol(0.0);
  const auto d = static_cast<double>(h0.rows());
  c.central_gap = h0.squaredNorm() / d;
  for (double k : c.k) {
    const Matrix h = symbol(k);
    const Matrix delta = kinetic(k);
    const double gapless = (delta.squaredNorm() + 2.0 * (delta * h0).trace().real()) / d;
    c.F.push_back(h.squaredNorm() / d);
    c.f.push_back(std::sqrt(std::max(0.0, gapless)));
  }
  return c;
}

double raising_amplitude(const ModelTag& model, const ModelParams& params) {
  switch (model.kind) {
    case ModelKind::lgt: {
      const double a = params.wilson_r / params.epsilon;
      return a * a;
    }
    case ModelKind::dqw: {
      const double a = wilson_amplitude(walk_params(model, params)) / params.epsilon;
      return a * a;
    }
    default:
      return 0.0;
  }
}

DoublingReport doubling_report(const ModelTag& model, const ModelParams& params, int grid_points) {
  if (grid_points < 101 || grid_points % 2 == 0) {
    throw InvalidArgument("doubling_report: grid_points must be odd and at least 101");
  }
  DoublingReport r;
  r.model = model;
  r.params = params;
  const std::vector<double> k = brillouin_grid(params.epsilon, grid_points);
  const double threshold = 1e-6 * kPi / params.epsilon;
  constexpr int kMergeCells = 3;

  std::vector<double> f(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) f[i] = gapless_frequency(model, params, k[i]);

  int cluster_end = -1 - kMergeCells;
  int best = -1;
  auto close_cluster = [&] {
    if (best >= 0) r.zeros.push_back(k[static_cast<std::size_t>(best)]);
    best = -1;
  };
  for (int i = 0; i < static_cast<int>(k.size()); ++i) {
    if (!(f[static_cast<std::size_t>(i)] < threshold)) continue;
    if (i - cluster_end > kMergeCells) close_cluster();
    if (best < 0 || f[static_cast<std::size_t>(i)] < f[static_cast<std::size_t>(best)]) best = i;
    cluster_end = i;
  }
  close_cluster();

  r.zero_count = static_cast<int>(r.zeros.size());
  r.edge_value = f.back();
  r.raising_amplitude = raising_amplitude(model, params);
  const double cell = k[1] - k[0];
  r.doubling_avoided = r.zero_count == 1 && std::abs(r.zeros.front()) < 0.5 * cell;
  if (model.kind == ModelKind::dqw) r.warnings = param_warnings(walk_params(model, params));
  return r;
}

RaisingSweep raising_amplitude_sweep(const ModelTag& model, const ModelParams& base,
                                     const std::vector<double>& epsilons) {
  if (epsilons.size() < 2 || !strictly_decreasing(epsilons)) {
    throw InvalidArgument("raising_amplitude_sweep: need at least 2 strictly decreasing epsilons");
  }
  RaisingSweep s;
  s.epsilons = epsilons;
  for (double eps : epsilons) {
    ModelParams p = base;
    p.epsilon = eps;
    s.amplitudes.push_back(raising_amplitude(model, p));
  }
  s.decaying = strictly_decreasing(s.amplitudes);
  s.bounded_below = true;
  for (std::size_t i = 1; i < s.amplitudes.size(); ++i) {
    if (s.amplitudes[i] < s.amplitudes[i - 1]) s.bounded_below = false;
  }
  if (model.kind == ModelKind::dqw) s.warnings = param_warnings(base);
  return s;
}

double slope_window(double epsilon) { return std::min(0.05 / epsilon, 0.5); }

double predicted_slope(const ModelTag& model, const ModelParams& params) {
  switch (model.kind) {
    case ModelKind::dqw: {
      const double r = params.effective_r();
      return 1.0 - 0.5 * r * r * std::pow(params.epsilon, 2.0 * params.rho);
    }
    case ModelKind::lgt:
      if (model.lambda == WilsonAxis::alpha0) {
        return 1.0 + params.epsilon * params.mass * params.wilson_r;
      }
      return 1.0;
    default:
      return 1.0;
  }
}

SlopeReport initial_slope(const ModelTag& model, const ModelParams& params) {
  constexpr int kPoints = 20;
  SlopeReport r;
  r.model = model;
  r.params = params;
  r.window_hi = slope_window(params.epsilon);
  double num = 0.0;
  double den = 0.0;
  for (int j = 1; j <= kPoints; ++j) {
    const double k = r.window_hi * j / kPoints;
    const double k2 = k * k;
    num += gapless_squared(model, params, k) * k2;
    den += k2 * k2;
  }
  r.fitted_slope = num / den;
  r.predicted_slope = predicted_slope(model, params);
  if (!std::isfinite(r.fitted_slope) || r.predicted_slope == 0.0) {
    throw InvalidArgument("initial_slope: degenerate fit");
  }
  r.relative_error = std::abs(r.fitted_slope - r.predicted_slope) / std::abs(r.predicted_slope);
  return r;
}

double lgt_quartic_check(const ModelParams& params, double k_max) {
  if (!(k_max > 0.0)) throw InvalidArgument("lgt_quartic_check: k_max must be positive");
  const ModelTag lgt = ModelTag::lgt();
  require_in_brillouin_zone(k_max, params.epsilon, "lgt_quartic_check");
  const double a = params.epsilon;
  const double r = params.wilson_r;
  const double c2 = 1.0 + a * params.mass * r;
  const double c4 = 0.25 * a * a * r * r - a * a / 3.0;
  constexpr int kPoints = 64;
  double worst = 0.0;
  for (int j = 1; j <= kPoints; ++j) {
    const double k = k_max * j / kPoints;
    const double k2 = k * k;
    const double poly = c2 * k2 + c4 * k2 * k2;
    worst = std::max(worst, std::abs(gapless_squared(lgt, params, k) - poly));
  }
  return worst;
}

ConvergenceStudy convergence_study(const ModelTag& model, const ModelParams& base,
                                   const std::vector<double>& epsilons) {
  if (epsilons.size() < 3 || !strictly_decreasing(epsilons)) {
    throw InvalidArgument("convergence_study: need at least 3 strictly decreasing epsilons");
  }
  ConvergenceStudy s;
  s.model = model;
  s.base = base;
  std::vector<double> errors;
  std::vector<double> relative;
  for (double eps : epsilons) {
    ModelParams p = base;
    p.epsilon = eps;
    const SlopeReport slope = initial_slope(model, p);
    ConvergenceRow row;
    row.epsilon = eps;
    row.fitted_slope = slope.fitted_slope;
    row.predicted_slope = slope.predicted_slope;
    row.error = std::abs(slope.fitted_slope - 1.0);
    row.relative_error = slope.relative_error;
    row.lambda_gap = std::numeric_limits<double>::quiet_NaN();
    if (model.kind == ModelKind::dqw && base.variant == Variant::wilson) {
      const double s0 = initial_slope(ModelTag::dqw(WilsonAxis::alpha0), p).fitted_slope;
      const double s2 = initial_slope(ModelTag::dqw(WilsonAxis::alpha2), p).fitted_slope;
      row.lambda_gap = std::abs(s0 - s2);
    }
    errors.push_back(row.error);
    relative.push_back(row.relative_error);
    s.rows.push_back(row);
  }

  const auto n = static_cast<double>(errors.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0)) throw InvalidArgument("convergence_study: zero slope error");
    const double x = std::log(epsilons[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  s.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - s.order * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double e = std::log(errors[i]) - (intercept + s.order * std::log(epsilons[i]));
    ss += e * e;
  }
  s.order_residual = std::sqrt(ss / n);
  s.error_monotone = strictly_decreasing(errors);
  s.relative_error_monotone = strictly_decreasing(relative);
  if (!s.error_monotone) s.warnings.emplace_back("non-monotone slope error sequence");
  if (!s.relative_error_monotone) s.warnings.emplace_back("non-monotone relative error sequence");
  if (model.kind == ModelKind::dqw) {
    for (auto& w : param_warnings(base)) s.warnings.push_back(std::move(w));
  }
  return s;
}

void write_dispersion_csv(std::ostream& os, const DispersionCurve& c) {
  const ModelParams& p = c.params;
  os << "model,epsilon,m,r,rho,lambda\n";
  os << c.model.name() << ',' << format_double(p.epsilon) << ',' << format_double(p.mass) << ','
     << format_double(p.wilson_r) << ',' << format_double(p.rho) << ',' << to_int(c.model.lambda)
     << '\n';
  os << "k,F,f\n";
  for (std::size_t i = 0; i < c.k.size(); ++i) {
    os << format_double(c.k[i]) << ',' << format_double(c.F[i]) << ',' << format_double(c.f[i])
       << '\n';
  }
}

}  // namespace diracwalk
