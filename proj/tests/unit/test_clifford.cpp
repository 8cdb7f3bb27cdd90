#include <doctest.h>

#include <filesystem>

#include "diracwalk/clifford.hpp"
#include "support/generators.hpp"

using namespace diracwalk;

TEST_CASE("Pauli representation satisfies the algebra exactly") {
  const CliffordRep rep = pauli_representation();
  const AlgebraReport r = verify_algebra(rep);
  CHECK(r.pass);
  CHECK(r.max_residual() == 0.0);
  CHECK(r.residuals.size() == 9);
  CHECK(rep.has_alpha2());
}

TEST_CASE("verify_algebra flags commuting alphas") {
  CliffordRep rep = pauli_representation();
  rep.alpha1 = rep.alpha0;
  const AlgebraReport r = verify_algebra(rep);
  CHECK_FALSE(r.pass);
  CHECK(r.at("{alpha0,alpha1}=0") == doctest::Approx(2.0));
}

TEST_CASE("verify_algebra rejects mismatched shapes") {
  CliffordRep rep = pauli_representation();
  rep.alpha1 = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(verify_algebra(rep), InvalidArgument);
}

TEST_CASE("random_unitary is unitary and reproducible") {
  for (Eigen::Index d : {1, 2, 4, 8}) {
    const Matrix u = random_unitary(d, 42);
    CHECK(identity_residual(u.adjoint() * u) < 1e-14);
    CHECK(u == random_unitary(d, 42));
    CHECK(u != random_unitary(d, 43));
  }
}

TEST_CASE("conjugation preserves the algebra and refuses non-unitary S") {
  testgen::Gen gen(7);
  for (int i = 0; i < 50; ++i) {
    const CliffordRep rep = gen.rep();
    CHECK(verify_algebra(rep).max_residual() <= 1e-14);
  }
  Matrix s = Matrix::Identity(2, 2);
  s(0, 0) = 2.0;
  CHECK_THROWS_AS(conjugate(pauli_representation(), s), InvalidArgument);
  CHECK_THROWS_AS(conjugate(pauli_representation(), Matrix::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("gamma operators obey the modified metric") {
  const double mu = 1.0 / std::sqrt(1.01);
  const GammaOperators g = gamma_operators(pauli_representation(), mu);
  CHECK(g.residual <= 1e-15);
  CHECK(g.metric(0, 0) == doctest::Approx(1.01));
  CHECK(g.metric(1, 1) == -1.0);
  CHECK(max_abs(g.gamma1 * g.gamma1 + Matrix::Identity(2, 2)) == 0.0);

  testgen::Gen gen(11);
  for (int i = 0; i < 50; ++i) {
    CHECK(gamma_operators(gen.rep(), gen.uniform(0.1, 1.0)).residual <= 1e-12);
  }
  CHECK_THROWS_AS(gamma_operators(pauli_representation(), 0.0), InvalidArgument);
}

TEST_CASE("direct sums stay representations") {
  const CliffordRep big = direct_sum(pauli_representation(), 3);
  CHECK(big.dim() == 6);
  CHECK(verify_algebra(big).max_residual() == 0.0);
  CHECK(verify_algebra(conjugate(big, random_unitary(6, 5))).max_residual() <= 1e-13);
}

TEST_CASE("representation files round-trip") {
  const auto path = std::filesystem::temp_directory_path() / "diracwalk_rep_roundtrip.txt";
  const CliffordRep rep = conjugate(pauli_representation(), random_unitary(2, 99));
  save_representation(path, rep);
  const CliffordRep back = load_representation(path);
  CHECK(back.alpha0 == rep.alpha0);
  CHECK(back.alpha1 == rep.alpha1);
  REQUIRE(back.alpha2.has_value());
  CHECK(*back.alpha2 == *rep.alpha2);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_representation(path), InvalidArgument);
}
