#include "run.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "emit.hpp"

namespace diracwalk::app {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormDriftTolerance = 1e-10;

std::string fixed(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string sci(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string label(const ModelTag& tag) {
  if (tag.kind == ModelKind::lgt && tag.lambda == WilsonAxis::alpha2) return "lgt_noncrossed";
  if (tag.kind == ModelKind::dqw && tag.lambda == WilsonAxis::alpha2) return "dqw_noncrossed";
  return tag.name();
}

struct Context {
  const RunConfig& config;
  std::ostringstream report;
  std::vector<Artifact> artifacts;
  std::string rep_name;
  int exit_code = kExitOk;

  explicit Context(const RunConfig& c) : config(c), rep_name(describe_representation(c)) {}

  void fail(int code, const std::string& why) {
    report << "FAILED: " << why << '\n';
    if (exit_code == kExitOk) exit_code = code;
  }
  void warn(const std::string& w) { report << "warning: " << w << '\n'; }
  void add_table(const std::string& file, const std::string& model, const std::string& content) {
    artifacts.push_back({file, "table", model, config.params, rep_name, content});
  }
};

void write_params(std::ostream& os, const RunConfig& c) {
  const ModelParams& p = c.params;
  os << "experiment: " << to_string(c.experiment) << '\n'
     << "parameters: epsilon=" << format_double(p.epsilon) << " m=" << format_double(p.mass)
     << " r=" << format_double(p.wilson_r) << " rho=" << format_double(p.rho)
     << " lambda=" << to_int(p.lambda) << " variant=" << to_string(p.variant) << '\n'
     << "representation: " << describe_representation(c) << '\n';
}

// ---------------------------------------------------------------- check

void section(Context& ctx, const std::string& title, const ResidualReport& r) {
  ctx.report << '\n' << title << " (tolerance " << sci(r.tolerance) << ")\n";
  write_report(ctx.report, r);
  if (!r.pass) ctx.fail(kExitConstraint, title + " exceeds tolerance");
}

void run_check(Context& ctx) {
  const RunConfig& c = ctx.config;
  const double tol = c.tolerance;
  const CliffordRep rep = resolve_representation(c);
  std::ostringstream table;
  table << "group,name,residual,pass\n";
  auto record = [&](const std::string& group, const ResidualReport& r) {
    for (const auto& [name, value] : r.residuals) {
      table << group << ',' << name << ',' << format_double(value) << ','
            << (value <= r.tolerance ? "pass" : "fail") << '\n';
    }
  };

  const AlgebraReport algebra = verify_algebra(rep, tol);
  section(ctx, "Clifford algebra", algebra);
  record("algebra", algebra);
  if (!algebra.pass) {
    ctx.add_table("check.csv", "dqw", table.str());
    return;
  }

  const CoinSet coins = build_coins(rep, c.params);
  const ConstraintReport unitarity = check_unitarity(coins, tol);
  section(ctx, "unitarity constraints", unitarity);
  record("unitarity", unitarity);

  try {
    const HamiltonianBlocks blocks = hamiltonian_blocks(coins, tol);
    const ResidualReport algebra_blocks = block_algebra(blocks, coins.norms(), tol);
    section(ctx, "Hamiltonian block algebra", algebra_blocks);
    record("blocks", algebra_blocks);

    ResidualReport extra;
    extra.tolerance = tol;
    extra.add("gamma-metric", gamma_operators(rep, coins.norms().mu).residual);
    const WalkOperator walk = build_walk_operator(coins, c.sites);
    extra.add("H-hermiticity", local_hamiltonian(walk, tol).hermiticity_residual());
    const std::vector<double> grid = brillouin_grid(c.params.epsilon, std::min(c.grid_points, 101));
    double scale = 1.0;
    for (double k : grid) scale = std::max(scale, F_of_k(ModelTag::dqw(c.params.lambda), c.params, k));
    extra.add("symbol-square", symbol_square_residual(coins, grid) / scale);
    section(ctx, "metric and Hamiltonian", extra);
    record("hamiltonian", extra);
  } catch (const ConsistencyError& e) {
    ctx.fail(kExitConstraint, e.what());
  }

  for (const std::string& w : param_warnings(c.params)) ctx.warn(w);
  ctx.add_table("check.csv", "dqw", table.str());
}

// ---------------------------------------------------------------- evolve

LatticeState random_state(Eigen::Index sites, Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix amps(dim, sites);
  for (Eigen::Index p = 0; p < sites; ++p) {
    for (Eigen::Index a = 0; a < dim; ++a) amps(a, p) = Complex(u(rng), u(rng));
  }
  amps /= amps.norm();
  return {amps, 0};
}

void run_evolve(Context& ctx) {
  const RunConfig& c = ctx.config;
  const CoinSet coins = build_coins(resolve_representation(c), c.params);
  const WalkOperator walk = build_walk_operator(coins, c.sites);

  LatticeState psi0;
  switch (c.initial_state) {
    case InitialState::packet: {
      WavePacket packet;
      packet.center_k = c.packet_k0;
      packet.width = c.packet_width;
      packet.branch = c.packet_branch;
      psi0 = make_wave_packet(coins, c.sites, packet);
      break;
    }
    case InitialState::delta:
      psi0 = LatticeState::delta(c.sites, c.sites / 2, Vector::Unit(coins.dim(), 0));
      break;
    case InitialState::random:
      psi0 = random_state(c.sites, coins.dim(), c.seed);
      break;
  }

  const Trajectory traj = c.scheme == Scheme::one_step
                              ? evolve_one_step(walk, psi0, c.steps)
                              : evolve_two_step(walk, psi0, walk.apply(psi0), c.steps);

  std::ostringstream table;
  table << "step,norm,mean,std,support_radius\n";
  double drift = 0.0;
  const double norm0 = psi0.norm();
  for (const LatticeState& s : traj.states) {
    const Observables o = observables(s, std::nullopt, 1e-30);
    drift = std::max(drift, std::abs(o.norm - norm0));
    table << s.step() << ',' << format_double(o.norm) << ',' << format_double(o.mean_position) << ','
          << format_double(o.std_position) << ',' << o.support_radius << '\n';
  }

  ctx.report << "\nsites " << c.sites << ", steps " << c.steps << ", scheme "
             << (c.scheme == Scheme::one_step ? "one_step" : "two_step") << '\n'
             << "norm drift " << sci(drift) << " (tolerance " << sci(kNormDriftTolerance) << ")\n";
  if (drift > kNormDriftTolerance) ctx.fail(kExitConstraint, "norm drift exceeds tolerance");

  const Observables last = observables(traj.states.back());
  ctx.report << "final mean " << fixed(last.mean_position) << ", final std " << fixed(last.std_position)
             << '\n';
  if (c.steps >= 10) {
    const double v = group_velocity_estimate(traj);
    ctx.report << "group velocity " << fixed(v, 9) << '\n';
    if (std::abs(v) > 1.0 + 1e-9) ctx.fail(kExitConstraint, "group velocity exceeds 1");
  }
  if (c.initial_state == InitialState::packet && c.params.mass > 0.0) {
    const ModelTag tag = ModelTag::dqw(c.params.lambda);
    const double h = 1e-5 * kPi / c.params.epsilon;
    const auto up = frequency_solutions(tag, c.params, c.packet_k0 + h);
    const auto down = frequency_solutions(tag, c.params, c.packet_k0 - h);
    if (up && down && std::abs(c.packet_k0) + h <= kPi / c.params.epsilon) {
      const double sign = c.packet_branch == Branch::plus ? 1.0 : -1.0;
      ctx.report << "predicted group velocity " << fixed(sign * (up->plus - down->plus) / (2 * h), 9)
                 << '\n';
    }
  }

  ctx.artifacts.push_back(trajectory_artifact("trajectory.csv", traj, ctx.rep_name));
  ctx.add_table("observables.csv", "dqw", table.str());
}

// ---------------------------------------------------------------- dispersion

// Symbol route versus closed form, relative to max(1, F).
double symbol_mismatch(const DispersionCurve& closed, const DispersionCurve& symbol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < closed.k.size(); ++i) {
    const double scale = std::max(1.0, closed.F[i]);
    worst = std::max({worst, std::abs(closed.F[i] - symbol.F[i]) / scale,
                      std::abs(closed.f[i] - symbol.f[i]) / std::sqrt(scale)});
  }
  return worst;
}

void compare_symbol(Context& ctx, const DispersionCurve& curve, const CliffordRep& rep) {
  const DispersionCurve symbol =
      symbol_dispersion_curve(curve.model, rep, curve.params, static_cast<int>(curve.k.size()));
  const double diff = symbol_mismatch(curve, symbol);
  ctx.report << label(curve.model) << ": symbol vs closed form " << sci(diff) << '\n';
  if (diff > 10.0 * ctx.config.tolerance) {
    ctx.fail(kExitConstraint, label(curve.model) + " symbol disagrees with closed form");
  }
}

void probe_frequency(Context& ctx, const ModelTag& tag, double k) {
  const ModelParams& p = ctx.config.params;
  ctx.report << "\nprobe k = " << format_double(k) << '\n';
  switch (tag.kind) {
    case ModelKind::dqw: {
      const auto w = frequency_solutions(tag, p, k);
      if (!w) {
        ctx.fail(kExitNoRealFrequency, "no real walk frequency at k = " + format_double(k));
        return;
      }
      ctx.report << "omega+ " << format_double(w->plus) << ", omega- " << format_double(w->minus)
                 << '\n';
      return;
    }
    case ModelKind::naive: {
      const auto t = temporal_doublers(p, k);
      if (!t) {
        ctx.fail(kExitNoRealFrequency,
                 "no real frequency at k = " + format_double(k) + " (epsilon^2 m^2 > cos^2(k epsilon))");
        return;
      }
      ctx.report << "omega+ " << format_double(t->omega.plus) << ", Omega+ "
                 << format_double(t->Omega.plus) << '\n';
      return;
    }
    default: {
      const double omega = std::sqrt(F_of_k(tag, p, k));
      ctx.report << "omega+ " << format_double(omega) << ", omega- " << format_double(-omega) << '\n';
    }
  }
}

void run_dispersion(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelTag tag = c.model_tag();
  const DispersionCurve curve = dispersion_curve(tag, c.params, c.grid_points);
  ctx.report << '\n' << label(tag) << ": " << curve.k.size() << " points, central gap "
             << format_double(curve.central_gap) << ", f(pi/epsilon) " << format_double(curve.f.back())
             << '\n';
  compare_symbol(ctx, curve, resolve_representation(c));
  for (const std::string& w : param_warnings(c.params)) {
    if (tag.kind == ModelKind::dqw) ctx.warn(w);
  }
  if (c.probe_k) probe_frequency(ctx, tag, *c.probe_k);
  ctx.artifacts.push_back(curve_artifact(label(tag) + ".csv", curve, ctx.rep_name));
}

// ---------------------------------------------------------------- doubling

void run_doubling(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelTag tag = c.model_tag();
  const DoublingReport r = doubling_report(tag, c.params, c.grid_points);
  ctx.report << '\n' << label(tag) << ": " << r.zero_count << " zero(s) of f on the zone";
  for (double z : r.zeros) ctx.report << ' ' << format_double(z);
  ctx.report << "\nf(pi/epsilon) " << format_double(r.edge_value) << ", raising amplitude "
             << format_double(r.raising_amplitude) << "\ndoubling avoided: " << yes_no(r.doubling_avoided)
             << '\n';
  for (const std::string& w : r.warnings) ctx.warn(w);
  ctx.artifacts.push_back(
      curve_artifact(label(tag) + ".csv", dispersion_curve(tag, c.params, c.grid_points), ctx.rep_name));

  if (!c.has("epsilons")) return;
  const RaisingSweep s = raising_amplitude_sweep(tag, c.params, c.epsilons);
  std::ostringstream table;
  table << "epsilon,raising_amplitude,zero_count\n";
  ctx.report << "\nepsilon sweep\n";
  for (std::size_t i = 0; i < s.epsilons.size(); ++i) {
    ModelParams p = c.params;
    p.epsilon = s.epsilons[i];
    const int zeros = doubling_report(tag, p, c.grid_points).zero_count;
    table << format_double(s.epsilons[i]) << ',' << format_double(s.amplitudes[i]) << ',' << zeros
          << '\n';
    ctx.report << "  epsilon " << format_double(s.epsilons[i]) << ": amplitude "
               << format_double(s.amplitudes[i]) << ", zeros " << zeros << '\n';
  }
  ctx.report << "amplitude decays as epsilon -> 0: " << yes_no(s.decaying)
             << "\namplitude bounded below as epsilon -> 0: " << yes_no(s.bounded_below) << '\n';
  ctx.add_table("doubling_sweep.csv", label(tag), table.str());
}

// ---------------------------------------------------------------- slope

void run_slope(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelTag tag = c.model_tag();
  const SlopeReport s = initial_slope(tag, c.params);
  ctx.report << '\n' << label(tag) << ": fitted slope " << format_double(s.fitted_slope)
             << "\npredicted slope " << format_double(s.predicted_slope) << "\nrelative error "
             << sci(s.relative_error) << "\nfit window 0 < k <= " << format_double(s.window_hi) << '\n';
  if (tag.kind == ModelKind::lgt) {
    ctx.report << "quartic expansion residual " << sci(lgt_quartic_check(c.params, s.window_hi)) << '\n';
  }
  for (const std::string& w : param_warnings(c.params)) {
    if (tag.kind == ModelKind::dqw) ctx.warn(w);
  }

  std::ostringstream table;
  table << "k,f2,fit\n";
  constexpr int kPoints = 20;
  for (int j = 1; j <= kPoints; ++j) {
    const double k = s.window_hi * j / kPoints;
    table << format_double(k) << ',' << format_double(gapless_squared(tag, c.params, k)) << ','
          << format_double(s.fitted_slope * k * k) << '\n';
  }
  ctx.add_table("slope.csv", label(tag), table.str());
}

// ---------------------------------------------------------------- sweep

void run_sweep(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelTag tag = c.model_tag();
  const ConvergenceStudy s = convergence_study(tag, c.params, c.epsilons);
  std::ostringstream table;
  table << "epsilon,fitted_slope,predicted_slope,error,relative_error,lambda_gap,raising_amplitude\n";
  ctx.report << '\n' << label(tag) << " slope convergence\n";
  for (const ConvergenceRow& row : s.rows) {
    ModelParams p = c.params;
    p.epsilon = row.epsilon;
    const double amplitude = raising_amplitude(tag, p);
    table << format_double(row.epsilon) << ',' << format_double(row.fitted_slope) << ','
          << format_double(row.predicted_slope) << ',' << format_double(row.error) << ','
          << format_double(row.relative_error) << ','
          << (std::isnan(row.lambda_gap) ? std::string() : format_double(row.lambda_gap)) << ','
          << format_double(amplitude) << '\n';
    ctx.report << "  epsilon " << format_double(row.epsilon) << ": slope " << fixed(row.fitted_slope, 9)
               << ", |slope - 1| " << sci(row.error) << ", relative error " << sci(row.relative_error)
               << '\n';
  }
  ctx.report << "convergence order " << fixed(s.order, 3) << " (log-log rms residual "
             << sci(s.order_residual) << ")\nerror decreases monotonically: " << yes_no(s.error_monotone)
             << "\nrelative error decreases monotonically: " << yes_no(s.relative_error_monotone) << '\n';
  for (const std::string& w : s.warnings) ctx.warn(w);
  ctx.add_table("sweep.csv", label(tag), table.str());
}

// ---------------------------------------------------------------- figures

std::string gnuplot_script(const std::string& title, const std::vector<std::string>& columns) {
  std::ostringstream os;
  os << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'k'\nset ylabel 'f(k)'\n"
     << "set title '" << title << "'\nplot ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ", \\\n     ";
    os << "'combined.csv' using 1:" << i + 2 << " with lines title '" << columns[i] << "'";
  }
  os << '\n';
  return os.str();
}

void zero_summary(Context& ctx, const ModelTag& tag, const ModelParams& p, int points) {
  const DoublingReport r = doubling_report(tag, p, points);
  ctx.report << label(tag) << ": " << r.zero_count << " zero(s) of f";
  for (double z : r.zeros) ctx.report << ' ' << format_double(z);
  ctx.report << ", f(pi/epsilon) " << format_double(r.edge_value) << '\n';
}

void run_figure1(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelParams& p = c.params;
  const std::vector<ModelTag> tags{ModelTag::dirac(), ModelTag::naive(), ModelTag::lgt(p.lambda),
                                   ModelTag::dqw(p.lambda)};
  const std::vector<std::string> names{"dirac", "naive", "lgt", "dqw"};
  std::vector<DispersionCurve> curves;
  for (const ModelTag& t : tags) curves.push_back(dispersion_curve(t, p, c.grid_points));

  ctx.report << '\n';
  const CliffordRep rep = resolve_representation(c);
  compare_symbol(ctx, curves[3], rep);
  for (std::size_t i = 1; i < tags.size(); ++i) zero_summary(ctx, tags[i], p, c.grid_points);
  for (const std::string& w : param_warnings(p)) ctx.warn(w);

  std::vector<const DispersionCurve*> ptrs;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    ctx.artifacts.push_back(curve_artifact(names[i] + ".csv", curves[i], ctx.rep_name));
    ptrs.push_back(&curves[i]);
  }
  ctx.artifacts.push_back({"combined.csv", "table", "", p, ctx.rep_name, combined_table(names, ptrs)});
  ctx.artifacts.push_back({"figure1.gp", "script", "", p, ctx.rep_name,
                           gnuplot_script("gapless frequency", names)});
}

void run_figure_supplemental(Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelParams& p = c.params;
  const std::vector<ModelTag> tags{ModelTag::dirac(), ModelTag::naive(), ModelTag::lgt(),
                                   ModelTag::lgt(WilsonAxis::alpha2)};
  std::vector<std::string> names;
  std::vector<DispersionCurve> curves;
  for (const ModelTag& t : tags) {
    names.push_back(label(t));
    curves.push_back(dispersion_curve(t, p, c.grid_points));
  }

  ctx.report << "\nspatial doubling\n";
  for (std::size_t i = 1; i < tags.size(); ++i) zero_summary(ctx, tags[i], p, c.grid_points);
  const double k_max = std::min(slope_window(p.epsilon), kPi / p.epsilon);
  ctx.report << "lgt initial slope " << format_double(initial_slope(ModelTag::lgt(), p).fitted_slope)
             << " (predicted " << format_double(predicted_slope(ModelTag::lgt(), p)) << ")\n"
             << "lgt quartic expansion residual on (0, " << format_double(k_max) << "] "
             << sci(lgt_quartic_check(p, k_max)) << '\n';

  std::ostringstream temporal;
  temporal << "k,omega,Omega,real\n";
  int missing = 0;
  for (double k : curves.front().k) {
    const auto t = temporal_doublers(p, k);
    if (!t) ++missing;
    temporal << format_double(k) << ',' << (t ? format_double(t->omega.plus) : std::string()) << ','
             << (t ? format_double(t->Omega.plus) : std::string()) << ',' << (t ? 1 : 0) << '\n';
  }
  ctx.report << "\ntemporal doubling: no real frequency at " << missing << " of " << curves.front().k.size()
             << " grid momenta (epsilon^2 m^2 > cos^2(k epsilon))\n";

  std::vector<const DispersionCurve*> ptrs;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    ctx.artifacts.push_back(curve_artifact(names[i] + ".csv", curves[i], ctx.rep_name));
    ptrs.push_back(&curves[i]);
  }
  std::ostringstream combined;
  combined << "k";
  for (const std::string& n : names) combined << ',' << n;
  for (std::size_t i = 1; i < names.size(); ++i) combined << ',' << names[i] << "_minus_dirac";
  combined << '\n';
  for (std::size_t j = 0; j < curves.front().k.size(); ++j) {
    combined << format_double(curves.front().k[j]);
    for (const DispersionCurve& cv : curves) combined << ',' << format_double(cv.f[j]);
    for (std::size_t i = 1; i < curves.size(); ++i) {
      combined << ',' << format_double(curves[i].f[j] - curves[0].f[j]);
    }
    combined << '\n';
  }
  ctx.artifacts.push_back({"combined.csv", "table", "", p, ctx.rep_name, combined.str()});
  ctx.add_table("temporal.csv", "naive", temporal.str());
  ctx.artifacts.push_back({"figure-supplemental.gp", "script", "", p, ctx.rep_name,
                           gnuplot_script("spatial doubling", names)});
}

}  // namespace

RunResult run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult result;
  Context ctx(config);
  write_params(ctx.report, config);
  try {
    switch (config.experiment) {
      case Experiment::check:
        run_check(ctx);
        break;
      case Experiment::evolve:
        run_evolve(ctx);
        break;
      case Experiment::dispersion:
        run_dispersion(ctx);
        break;
      case Experiment::doubling:
        run_doubling(ctx);
        break;
      case Experiment::slope:
        run_slope(ctx);
        break;
      case Experiment::sweep:
        run_sweep(ctx);
        break;
      case Experiment::figure1:
        run_figure1(ctx);
        break;
      case Experiment::figure_supplemental:
        run_figure_supplemental(ctx);
        break;
    }
  } catch (const ConsistencyError& e) {
    ctx.fail(kExitConstraint, e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kExitError;
    return result;
  }

  ctx.report << "\nresult: " << (ctx.exit_code == kExitOk ? "ok" : "failed") << " (exit code "
             << ctx.exit_code << ")\n";
  ctx.artifacts.push_back({"report.txt", "report", "", config.params, ctx.rep_name, ctx.report.str()});
  try {
    result.files = emit_csv(ctx.artifacts, config.output_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kExitError;
    return result;
  }
  out << ctx.report.str();
  result.exit_code = ctx.exit_code;
  return result;
}

}  // namespace diracwalk::app
