#include "diracwalk/clifford.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <vector>

namespace diracwalk {

CliffordRep pauli_representation() {
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -kI, kI, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  return CliffordRep{sx, sz, sy, "pauli"};
}

namespace {

void require_square(const Matrix& m, Eigen::Index d, const char* name) {
  if (m.rows() != d || m.cols() != d) {
    throw InvalidArgument(std::string("CliffordRep: ") + name + " is " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()) + ", expected " + std::to_string(d) + "x" +
                          std::to_string(d));
  }
}

void check_shapes(const CliffordRep& rep) {
  const Eigen::Index d = rep.alpha0.rows();
  if (d < 1) throw InvalidArgument("CliffordRep: empty representation");
  require_square(rep.alpha0, d, "alpha0");
  require_square(rep.alpha1, d, "alpha1");
  if (rep.alpha2) require_square(*rep.alpha2, d, "alpha2");
}

}  // namespace

AlgebraReport verify_algebra(const CliffordRep& rep, double tol) {
  check_shapes(rep);
  AlgebraReport report;
  report.tolerance = tol;

  std::vector<std::pair<std::string, const Matrix*>> alphas{{"alpha0", &rep.alpha0},
                                                            {"alpha1", &rep.alpha1}};
  if (rep.alpha2) alphas.emplace_back("alpha2", &*rep.alpha2);

  for (const auto& [name, a] : alphas) report.add(name + "^2=I", identity_residual(*a * *a));
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = i + 1; j < alphas.size(); ++j) {
      report.add("{" + alphas[i].first + "," + alphas[j].first + "}=0",
                 max_abs(anticommutator(*alphas[i].second, *alphas[j].second)));
    }
  }
  for (const auto& [name, a] : alphas) report.add(name + "-hermitian", hermiticity_residual(*a));
  return report;
}

CliffordRep conjugate(const CliffordRep& rep, const Matrix& s, double tol) {
  check_shapes(rep);
  if (s.rows() != rep.dim() || s.cols() != rep.dim()) {
    throw InvalidArgument("conjugate: unitary has the wrong dimension");
  }
  const double unitarity = identity_residual(s.adjoint() * s);
  if (!(unitarity <= tol)) {
    throw InvalidArgument("conjugate: S is not unitary (|S^dag S - I| = " +
                          format_double(unitarity) + ")");
  }
  const Matrix sd = s.adjoint();
  CliffordRep out;
  out.alpha0 = s * rep.alpha0 * sd;
  out.alpha1 = s * rep.alpha1 * sd;
  if (rep.alpha2) out.alpha2 = s * *rep.alpha2 * sd;
  out.label = rep.label + "-conjugated";
  return out;
}

Matrix random_unitary(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("random_unitary: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mod = std::abs(rjj);
    if (mod > 0.0) q.col(j) *= rjj / mod;
  }
  return q;
}

GammaOperators gamma_operators(const CliffordRep& rep, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw InvalidArgument("gamma_operators: mu must be positive and finite");
  }
  const AlgebraReport algebra = verify_algebra(rep);
  if (!algebra.pass) throw InvalidArgument("gamma_operators: representation fails the algebra check");

  GammaOperators g;
  g.gamma0 = rep.alpha0 / mu;
  g.gamma1 = rep.alpha0 * rep.alpha1;
  g.metric << 1.0 / (mu * mu), 0.0, 0.0, -1.0;

  const Matrix* gammas[2] = {&g.gamma0, &g.gamma1};
  const Matrix id = Matrix::Identity(rep.dim(), rep.dim());
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      const Matrix lhs = anticommutator(*gammas[a], *gammas[b]);
      worst = std::max(worst, max_abs(lhs - 2.0 * g.metric(a, b) * id));
    }
  }
  g.residual = worst;
  return g;
}

CliffordRep load_representation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open representation file " + path.string());
  std::vector<Matrix> mats;
  try {
    mats = read_matrices_text(in);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
  if (mats.size() != 2 && mats.size() != 3) {
    throw InvalidArgument(path.string() + ": expected 2 or 3 matrices, found " +
                          std::to_string(mats.size()));
  }
  CliffordRep rep;
  rep.alpha0 = mats[0];
  rep.alpha1 = mats[1];
  if (mats.size() == 3) rep.alpha2 = mats[2];
  rep.label = path.filename().string();
  check_shapes(rep);
  return rep;
}

void save_representation(const std::filesystem::path& path, const CliffordRep& rep) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write representation file " + path.string());
  out << "# " << rep.label << ": alpha0, alpha1" << (rep.alpha2 ? ", alpha2" : "") << '\n';
  write_matrix_text(out, rep.alpha0);
  out << '\n';
  write_matrix_text(out, rep.alpha1);
  if (rep.alpha2) {
    out << '\n';
    write_matrix_text(out, *rep.alpha2);
  }
}

CliffordRep direct_sum(const CliffordRep& rep, Eigen::Index copies) {
  if (copies < 1) throw InvalidArgument("direct_sum: copies must be positive");
  const Eigen::Index d = rep.dim();
  auto block = [&](const Matrix& m) {
    Matrix out = Matrix::Zero(d * copies, d * copies);
    for (Eigen::Index c = 0; c < copies; ++c) out.block(c * d, c * d, d, d) = m;
    return out;
  };
  CliffordRep out;
  out.alpha0 = block(rep.alpha0);
  out.alpha1 = block(rep.alpha1);
  if (rep.alpha2) out.alpha2 = block(*rep.alpha2);
  out.label = rep.label + "^" + std::to_string(copies);
  return out;
}

}  // namespace diracwalk
