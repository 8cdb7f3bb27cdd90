#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "diracwalk/spectral.hpp"
#include "support/generators.hpp"

using namespace diracwalk;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<ModelTag> kAllModels{ModelTag::dirac(), ModelTag::naive(), ModelTag::lgt(),
                                       ModelTag::lgt(WilsonAxis::alpha2), ModelTag::dqw(),
                                       ModelTag::dqw(WilsonAxis::alpha2)};

ModelParams params(double eps, double m, double r, double rho) {
  ModelParams p;
  p.epsilon = eps;
  p.mass = m;
  p.wilson_r = r;
  p.rho = rho;
  return p;
}

}  // namespace

TEST_CASE("closed-form dispersion at the zone edge") {
  const ModelParams p;
  const double edge = kPi / p.epsilon;
  CHECK(F_of_k(ModelTag::lgt(), p, edge) == doctest::Approx(441.0).epsilon(1e-14));
  CHECK(gapless_frequency(ModelTag::lgt(), p, edge) ==
        doctest::Approx(20.976176963403031).epsilon(1e-14));
  CHECK(F_of_k(ModelTag::dqw(), p, edge) == doctest::Approx(31.126126001367843).epsilon(1e-14));
  CHECK(gapless_frequency(ModelTag::dqw(), p, edge) ==
        doctest::Approx(5.4896290395132214).epsilon(1e-14));
  CHECK_THROWS_AS(F_of_k(ModelTag::naive(), p, edge * 1.01), InvalidArgument);
  CHECK_NOTHROW(F_of_k(ModelTag::dirac(), p, edge * 3));
}

TEST_CASE("central gaps") {
  ModelParams p;
  p.mass = 4.0;
  CHECK(central_gap(ModelTag::dirac(), p) == 16.0);
  CHECK(central_gap(ModelTag::dqw(), ModelParams{}) ==
        doctest::Approx(0.99009900990099010).epsilon(1e-15));
  p.mass = 0.0;
  for (const ModelTag& t : kAllModels) CHECK(central_gap(t, p) == 0.0);

  testgen::Gen gen(10);
  for (int i = 0; i < 100; ++i) {
    const ModelParams q = gen.params();
    for (const ModelTag& t : kAllModels) {
      CHECK(central_gap(t, q) == F_of_k(t, q, 0.0));
      CHECK(gapless_frequency(t, q, 0.0) == 0.0);
    }
  }
}

TEST_CASE("gapless frequencies are even in k") {
  testgen::Gen gen(12);
  for (int i = 0; i < 50; ++i) {
    const ModelParams q = gen.params();
    for (double k : brillouin_grid(q.epsilon, 101)) {
      for (const ModelTag& t : kAllModels) {
        CHECK(gapless_frequency(t, q, k) == gapless_frequency(t, q, -k));
      }
    }
  }
}

TEST_CASE("closed forms equal squared symbol eigenvalues") {
  testgen::Gen gen(13);
  for (int i = 0; i < 30; ++i) {
    const ModelParams q = gen.params();
    const CliffordRep rep = gen.rep();
    for (double k : brillouin_grid(q.epsilon, 101)) {
      for (const ModelTag& t : kAllModels) {
        const double F = F_of_k(t, q, k);
        CHECK(std::abs(symbol_F(t, rep, q, k) - F) <= 1e-10 * std::max(1.0, F));
      }
    }
  }
}

TEST_CASE("lambda = 2 has no crossed mass term at the zone edge") {
  ModelParams p0 = params(0.1, 0.0, 1.0, 0.6);
  ModelParams p1 = params(0.1, 1e-6, 1.0, 0.6);
  const double edge = kPi / 0.1;
  const double d2 = (F_of_k(ModelTag::dqw(WilsonAxis::alpha2), p1, edge) -
                     F_of_k(ModelTag::dqw(WilsonAxis::alpha2), p0, edge)) / 1e-6;
  const double d0 = (F_of_k(ModelTag::dqw(), p1, edge) - F_of_k(ModelTag::dqw(), p0, edge)) / 1e-6;
  CHECK(std::abs(d2) < 1e-4);
  CHECK(std::abs(d0) > 0.1);
}

TEST_CASE("walk frequencies") {
  ModelParams p;
  p.mass = 0.0;
  auto w = frequency_solutions(ModelTag::dqw(), p, 0.0);
  REQUIRE(w.has_value());
  CHECK(w->plus == 0.0);

  w = frequency_solutions(ModelTag::dqw(), ModelParams{}, 0.0);
  REQUIRE(w.has_value());
  CHECK(w->plus == doctest::Approx(0.99668652491162027).epsilon(1e-14));
  CHECK(w->minus == -w->plus);

  // The walk symbol is unitary, so eps^2 F <= 1 and a real frequency always
  // exists; at eps = 1, m = 2 the gap is (mu m)^2 = 4/5.
  const ModelParams coarse = params(1.0, 2.0, 1.0, 0.6);
  CHECK(F_of_k(ModelTag::dqw(), coarse, 0.0) == doctest::Approx(0.8));
  CHECK(frequency_solutions(ModelTag::dqw(), coarse, 0.0).has_value());
  CHECK_THROWS_AS(frequency_solutions(ModelTag::lgt(), ModelParams{}, 0.0), InvalidArgument);

  testgen::Gen gen(14);
  for (int i = 0; i < 100; ++i) {
    const ModelParams q = gen.params();
    for (double k : brillouin_grid(q.epsilon, 51)) {
      const ModelTag t = ModelTag::dqw(q.lambda);
      const double F = F_of_k(t, q, k);
      const auto sol = frequency_solutions(t, q, k);
      CHECK(q.epsilon * q.epsilon * F <= 1.0 + 1e-12);
      CHECK(sol.has_value() == (q.epsilon * std::sqrt(F) <= 1.0));
      if (sol) {
        const double s = std::sin(sol->plus * q.epsilon) / q.epsilon;
        CHECK(std::abs(s * s - F) <= 1e-12 * std::max(1.0, F));
      }
    }
  }
}

TEST_CASE("temporal doublers") {
  ModelParams p;
  p.mass = 0.0;
  auto t = temporal_doublers(p, 0.0);
  REQUIRE(t.has_value());
  CHECK(t->omega.plus == 0.0);
  CHECK(t->Omega.plus == doctest::Approx(kPi / 0.1));
  CHECK(t->Omega.minus == doctest::Approx(-kPi / 0.1));

  t = temporal_doublers(ModelParams{}, 0.0);
  REQUIRE(t.has_value());
  CHECK(t->omega.plus == doctest::Approx(1.0016742116155980).epsilon(1e-14));
  CHECK(t->Omega.plus == doctest::Approx(30.414252324282334).epsilon(1e-14));
  CHECK_FALSE(temporal_doublers(ModelParams{}, kPi / 0.2).has_value());

  for (double k : brillouin_grid(0.1, 1001)) {
    const double c = std::cos(k * 0.1);
    const auto sol = temporal_doublers(ModelParams{}, k);
    CHECK(sol.has_value() == (0.01 <= c * c));
    if (sol) {
      const double s = std::sin(sol->omega.plus * 0.1);
      const double sk = std::sin(k * 0.1);
      CHECK(std::abs(s * s - sk * sk - 0.01) <= 1e-14);
      CHECK(sol->Omega.plus + sol->omega.plus == doctest::Approx(kPi / 0.1));
    }
  }
}

TEST_CASE("Brillouin grid") {
  const auto k = brillouin_grid(0.1, 101);
  REQUIRE(k.size() == 101);
  CHECK(k.front() == -kPi / 0.1);
  CHECK(k.back() == kPi / 0.1);
  CHECK(k[50] == 0.0);
  for (std::size_t i = 0; i < k.size(); ++i) CHECK(k[i] == -k[k.size() - 1 - i]);
  CHECK_THROWS_AS(brillouin_grid(0.1, 100), InvalidArgument);
  CHECK_THROWS_AS(brillouin_grid(0.1, 1), InvalidArgument);
}

TEST_CASE("dispersion curves from closed forms and symbols agree") {
  const ModelParams p;
  const CliffordRep rep = conjugate(pauli_representation(), random_unitary(2, 5));
  for (const ModelTag& t : kAllModels) {
    const DispersionCurve a = dispersion_curve(t, p, 101);
    const DispersionCurve b = symbol_dispersion_curve(t, rep, p, 101);
    CHECK(a.f[50] == 0.0);
    CHECK(b.f[50] == 0.0);
    for (std::size_t i = 0; i < a.k.size(); ++i) {
      CHECK(a.f[i] >= 0.0);
      CHECK(std::abs(a.F[i] - b.F[i]) <= 1e-10 * std::max(1.0, a.F[i]));
    }
  }
}

TEST_CASE("doubling reports") {
  const ModelParams p;
  const DoublingReport naive = doubling_report(ModelTag::naive(), p, 1001);
  CHECK(naive.zero_count == 3);
  CHECK_FALSE(naive.doubling_avoided);
  REQUIRE(naive.zeros.size() == 3);
  CHECK(naive.zeros[0] == -kPi / 0.1);
  CHECK(naive.zeros[1] == 0.0);
  CHECK(naive.zeros[2] == kPi / 0.1);
  CHECK(naive.raising_amplitude == 0.0);

  const DoublingReport lgt = doubling_report(ModelTag::lgt(), p, 1001);
  CHECK(lgt.zero_count == 1);
  CHECK(lgt.doubling_avoided);
  CHECK(lgt.edge_value == doctest::Approx(std::sqrt(440.0)));
  CHECK(lgt.raising_amplitude == doctest::Approx(100.0));

  const DoublingReport dqw = doubling_report(ModelTag::dqw(), p, 101);
  CHECK(dqw.doubling_avoided);
  CHECK(dqw.warnings.empty());
  CHECK(dqw.raising_amplitude == doctest::Approx(5.25336).epsilon(1e-5));

  ModelParams steep = p;
  steep.rho = 1.2;
  const DoublingReport late = doubling_report(ModelTag::dqw(), steep, 101);
  CHECK(late.warnings == std::vector<std::string>{std::string(kDoublingWarning)});
  CHECK(late.raising_amplitude == doctest::Approx(0.386127).epsilon(1e-5));

  ModelParams q0 = p;
  q0.variant = Variant::massive_q0;
  CHECK(doubling_report(ModelTag::dqw(), q0, 101).zero_count == 3);
  CHECK(doubling_report(ModelTag::dirac(), p, 101).zero_count == 1);
  CHECK_THROWS_AS(doubling_report(ModelTag::lgt(), p, 99), InvalidArgument);
  CHECK_THROWS_AS(doubling_report(ModelTag::lgt(), p, 102), InvalidArgument);
}

TEST_CASE("raising amplitude sweeps") {
  const std::vector<double> eps{0.1, 0.01, 0.001};
  const RaisingSweep low = raising_amplitude_sweep(ModelTag::dqw(), params(0.1, 1, 1, 0.6), eps);
  CHECK(low.bounded_below);
  CHECK_FALSE(low.decaying);
  CHECK(low.amplitudes[1] == doctest::Approx(39.4419).epsilon(1e-5));
  CHECK(low.amplitudes[2] == doctest::Approx(251.054).epsilon(1e-5));

  const RaisingSweep high = raising_amplitude_sweep(ModelTag::dqw(), params(0.1, 1, 1, 1.2), eps);
  CHECK(high.decaying);
  CHECK_FALSE(high.bounded_below);
  CHECK(high.amplitudes[1] == doctest::Approx(0.158456).epsilon(1e-5));
  CHECK(high.amplitudes[2] == doctest::Approx(0.0630956).epsilon(1e-5));
  CHECK(high.warnings == std::vector<std::string>{std::string(kDoublingWarning)});

  CHECK_THROWS_AS(raising_amplitude_sweep(ModelTag::dqw(), ModelParams{}, {0.01, 0.1}),
                  InvalidArgument);
}

TEST_CASE("initial slopes") {
  const SlopeReport dirac = initial_slope(ModelTag::dirac(), ModelParams{});
  CHECK(dirac.fitted_slope == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dirac.relative_error <= 1e-15);

  const SlopeReport dqw = initial_slope(ModelTag::dqw(), ModelParams{});
  CHECK(dqw.predicted_slope == doctest::Approx(0.96845213277599034).epsilon(1e-15));
  CHECK(dqw.window_hi <= 0.1 * kPi / 0.1);
  CHECK(dqw.window_lo == 0.0);

  const SlopeReport lgt = initial_slope(ModelTag::lgt(), params(1.0, 0.1, 1.0, 0.6));
  CHECK(lgt.predicted_slope == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(lgt.window_hi == doctest::Approx(0.05));
  CHECK(lgt.relative_error < 1e-3);
  CHECK(lgt.fitted_slope == doctest::Approx(1.1).epsilon(1e-3));

  CHECK(slope_window(0.1) == 0.5);
  CHECK(slope_window(1.0) == 0.05);
  CHECK(slope_window(0.001) == 0.5);
}

TEST_CASE("LGT quartic expansion") {
  const ModelParams free = params(1.0, 0.0, 0.0, 0.6);
  const double a = lgt_quartic_check(free, 0.1);
  const double b = lgt_quartic_check(free, 0.05);
  CHECK(a / b == doctest::Approx(64.0).epsilon(0.05));

  // With a mass the quoted polynomial misses a crossed k^4 term, so the
  // residual only falls like k^4.
  const ModelParams massive = params(1.0, 0.1, 1.0, 0.6);
  const double ratio = lgt_quartic_check(massive, 0.1) / lgt_quartic_check(massive, 0.05);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.05));

  const ModelParams wilson = params(1.0, 0.0, 1.0, 0.6);
  const double r1 = lgt_quartic_check(wilson, 0.1) / lgt_quartic_check(wilson, 0.05);
  CHECK(r1 >= 48.0);
  CHECK(r1 <= 80.0);
  const ModelParams fine = params(0.1, 0.0, 1.0, 0.6);
  const double r2 = lgt_quartic_check(fine, 1.0) / lgt_quartic_check(fine, 0.5);
  CHECK(r2 >= 48.0);
  CHECK(r2 <= 80.0);
  CHECK(lgt_quartic_check(fine, 0.1) < lgt_quartic_check(wilson, 0.1));
}

TEST_CASE("convergence studies") {
  const std::vector<double> eps{0.1, 0.03, 0.01};
  const ConvergenceStudy dqw = convergence_study(ModelTag::dqw(), ModelParams{}, eps);
  CHECK(dqw.order >= 1.0);
  CHECK(dqw.order <= 1.4);
  CHECK(dqw.error_monotone);
  CHECK(dqw.rows.size() == 3);
  CHECK(std::isfinite(dqw.rows[0].lambda_gap));

  const ConvergenceStudy lgt = convergence_study(ModelTag::lgt(), ModelParams{}, eps);
  CHECK(lgt.order >= 0.9);
  CHECK(lgt.order <= 1.1);
  CHECK(std::isnan(lgt.rows[0].lambda_gap));

  const std::vector<double> fine{0.1, 0.03, 0.01, 0.003};
  const ConvergenceStudy fast = convergence_study(ModelTag::dqw(), params(0.1, 1, 1, 0.6), fine);
  const ConvergenceStudy slow = convergence_study(ModelTag::dqw(), params(0.1, 1, 1, 0.4), fine);
  const ConvergenceStudy ref = convergence_study(ModelTag::lgt(), params(0.1, 1, 1, 0.6), fine);
  CHECK(slow.warnings == std::vector<std::string>{std::string(kSlowSlopeWarning)});
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (fine[i] > 0.01) continue;
    CHECK(fast.rows[i].error < ref.rows[i].error);
    CHECK(ref.rows[i].error < slow.rows[i].error);
  }

  CHECK_THROWS_AS(convergence_study(ModelTag::dqw(), ModelParams{}, {0.1, 0.01}), InvalidArgument);
  CHECK_THROWS_AS(convergence_study(ModelTag::dqw(), ModelParams{}, {0.1, 0.01, 0.03}),
                  InvalidArgument);
  CHECK_THROWS_AS(convergence_study(ModelTag::dirac(), ModelParams{}, eps), InvalidArgument);
}

TEST_CASE("dispersion CSV layout") {
  const DispersionCurve c = dispersion_curve(ModelTag::lgt(), ModelParams{}, 3);
  std::ostringstream os;
  write_dispersion_csv(os, c);
  CHECK(os.str() ==
        "model,epsilon,m,r,rho,lambda\n"
        "lgt,0.1,1,1,0.6,0\n"
        "k,F,f\n"
        "-31.41592653589793,441,20.97617696340303\n"
        "0,1,0\n"
        "31.41592653589793,441,20.97617696340303\n");
}

TEST_CASE("model names round-trip") {
  for (const ModelTag& t : {ModelTag::dirac(), ModelTag::naive(), ModelTag::lgt(), ModelTag::dqw()}) {
    CHECK(model_from_string(t.name()) == t);
  }
  CHECK(model_from_string("dqw", WilsonAxis::alpha2) == ModelTag::dqw(WilsonAxis::alpha2));
  CHECK_THROWS_AS(model_from_string("wilson"), InvalidArgument);
}
