#include <doctest.h>

#include <cmath>

#include "diracwalk/coins.hpp"
#include "support/generators.hpp"

using namespace diracwalk;

namespace {

ModelParams figure_params(WilsonAxis lambda) {
  ModelParams p;
  p.lambda = lambda;
  return p;
}

}  // namespace

TEST_CASE("normalization factors at eps=0.1, m=1, r=1, rho=0.6") {
  const Normalizations n0 = normalization_factors(figure_params(WilsonAxis::alpha0));
  const Normalizations n2 = normalization_factors(figure_params(WilsonAxis::alpha2));
  CHECK(n0.mu == doctest::Approx(0.99503719020998914).epsilon(1e-15));
  CHECK(n0.nu == doctest::Approx(0.91247001996889402).epsilon(1e-14));
  CHECK(n0.eta == doctest::Approx(0.94081621098022087).epsilon(1e-14));
  CHECK(n2.nu == doctest::Approx(0.93598079454869833).epsilon(1e-14));
  CHECK(n2.eta == doctest::Approx(0.96505735575573429).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = ModelParams{};
  p.mass = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = ModelParams{};
  p.rho = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = ModelParams{};
  p.lambda = WilsonAxis::alpha1;
  try {
    p.validate();
    FAIL("lambda = 1 accepted");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("B^dag V = V^dag B") != std::string::npos);
  }
  CHECK_NOTHROW(p.validate(true));
  p.variant = Variant::massive_q0;
  p.rho = -1.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("parameter warnings flag the rho regimes") {
  ModelParams p;
  p.rho = 1.2;
  CHECK(param_warnings(p) == std::vector<std::string>{std::string(kDoublingWarning)});
  p.rho = 0.4;
  CHECK(param_warnings(p) == std::vector<std::string>{std::string(kSlowSlopeWarning)});
  p.rho = 0.6;
  CHECK(param_warnings(p).empty());
}

TEST_CASE("massive_q0 coins coincide with the r = 0 Wilson coins") {
  ModelParams q0;
  q0.variant = Variant::massive_q0;
  ModelParams w;
  w.wilson_r = 0.0;
  const CoinSet a = build_coins(pauli_representation(), q0);
  const CoinSet b = build_coins(pauli_representation(), w);
  CHECK(max_abs(a.B() - b.B()) == 0.0);
  CHECK(max_abs(a.V() - b.V()) == 0.0);
  CHECK(max_abs(a.M() - b.M()) == 0.0);
  const double mu = a.norms().mu;
  CHECK(max_abs(a.V() - mu * Matrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("jump and transport coins round-trip") {
  testgen::Gen gen(21);
  for (int i = 0; i < 100; ++i) {
    const CoinSet c = build_coins(gen.rep(), gen.params());
    const CoinSet back =
        CoinSet::from_jumps(c.rep(), c.params(), c.norms(), c.w_minus(), c.w_zero(), c.w_plus());
    CHECK(max_abs(back.B() - c.B()) <= 4e-16 * std::max(1.0, max_abs(c.B())));
    CHECK(max_abs(back.V() - c.V()) <= 4e-16 * std::max(1.0, max_abs(c.V())));
    CHECK(max_abs(back.M() - c.M()) <= 4e-16 * std::max(1.0, max_abs(c.M())));
  }
}

TEST_CASE("built coins satisfy all nine unitarity identities") {
  testgen::Gen gen(1234);
  for (int i = 0; i < 300; ++i) {
    const ModelParams p = gen.params();
    const ConstraintReport r = check_unitarity(build_coins(gen.rep(), p));
    CHECK(r.residuals.size() == 9);
    INFO("eps=" << p.epsilon << " m=" << p.mass << " r=" << p.wilson_r << " rho=" << p.rho);
    CHECK(r.pass);
  }
}

TEST_CASE("default check report lists the nine residual names") {
  const ConstraintReport r = check_unitarity(build_coins(pauli_representation(), ModelParams{}));
  std::vector<std::string> names;
  for (const auto& entry : r.residuals) names.push_back(entry.first);
  CHECK(names == std::vector<std::string>{"sum-to-identity", "adjacent-cross", "opposite-cross",
                                          "VdagV=BdagB", "BdagV=VdagB", "2VdagV=VdagM+MdagV",
                                          "BdagM=MdagB", "MdagM=1", "UU-dagger-side"});
  CHECK(r.max_residual() <= 1e-15);
}

TEST_CASE("a Wilson term along alpha1 breaks unitarity") {
  ModelParams p;
  p.lambda = WilsonAxis::alpha1;
  CHECK_THROWS_AS(build_coins(pauli_representation(), p), InvalidArgument);

  p.lambda = WilsonAxis::alpha0;
  const CliffordRep rep = pauli_representation();
  const Normalizations n = normalization_factors(p);
  const Matrix id = Matrix::Identity(2, 2);
  const double er = std::pow(p.epsilon, p.rho) * p.wilson_r;
  const CoinSet bad = CoinSet::from_transport(rep, p, n, n.eta * rep.alpha1,
                                              n.nu * (id + kI * er * rep.alpha1),
                                              n.mu * (id - kI * p.epsilon * p.mass * rep.alpha0));
  const ConstraintReport r = check_unitarity(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.at("BdagV=VdagB") > 1e-3);
}

TEST_CASE("lambda = 2 needs alpha2") {
  CliffordRep rep = pauli_representation();
  rep.alpha2.reset();
  ModelParams p;
  p.lambda = WilsonAxis::alpha2;
  CHECK_THROWS_AS(build_coins(rep, p), InvalidArgument);
  p.lambda = WilsonAxis::alpha0;
  CHECK_NOTHROW(build_coins(rep, p));
}

TEST_CASE("build_coins rejects a broken representation") {
  CliffordRep rep = pauli_representation();
  rep.alpha1 = rep.alpha0;
  CHECK_THROWS_AS(build_coins(rep, ModelParams{}), InvalidArgument);
}

TEST_CASE("Hamiltonian blocks: massive_q0 closed form") {
  ModelParams p;
  p.variant = Variant::massive_q0;
  const CliffordRep rep = pauli_representation();
  const CoinSet c = build_coins(rep, p);
  const HamiltonianBlocks h = hamiltonian_blocks(c);
  const double mu = c.norms().mu;
  CHECK(max_abs(h.A1 - mu * rep.alpha1) <= 1e-16);
  CHECK(max_abs(h.A0 - mu * rep.alpha0) == 0.0);
  CHECK(max_abs(h.wilson_block) == 0.0);
}

TEST_CASE("Hamiltonian blocks form a Clifford pair for every built coin set") {
  testgen::Gen gen(77);
  for (int i = 0; i < 300; ++i) {
    const CoinSet c = build_coins(gen.rep(), gen.params());
    const ResidualReport r = block_algebra(hamiltonian_blocks(c), c.norms());
    CHECK(r.pass);
  }
}

TEST_CASE("Hamiltonian block cross-check detects tampered coins") {
  const CoinSet c = build_coins(pauli_representation(), ModelParams{});
  const Matrix tampered = c.M() + 1e-6 * kI * Matrix::Identity(2, 2);
  const CoinSet bad = CoinSet::from_transport(c.rep(), c.params(), c.norms(), c.B(), c.V(), tampered);
  CHECK_THROWS_AS(hamiltonian_blocks(bad), ConsistencyError);
}

TEST_CASE("Wilson amplitude") {
  ModelParams p;
  const Normalizations n = normalization_factors(p);
  CHECK(wilson_amplitude(p) == doctest::Approx(n.nu * std::pow(0.1, 0.6)).epsilon(1e-15));
  p.variant = Variant::massive_q0;
  CHECK(wilson_amplitude(p) == 0.0);
}
