#include "diracwalk/coins.hpp"

#include <algorithm>
#include <cmath>

namespace diracwalk {

Normalizations normalization_factors(const ModelParams& params) {
  params.validate();
  const double eps = params.epsilon;
  const double em = eps * params.mass;
  const double mu = 1.0 / std::sqrt(1.0 + em * em);
  if (params.variant == Variant::massive_q0) return {mu, mu, mu};

  const double er = std::pow(eps, params.rho) * params.wilson_r;
  const double lift = 1.0 + er * er;
  double nu = 0.0;
  if (params.lambda == WilsonAxis::alpha0) {
    nu = mu * (1.0 - std::pow(eps, 1.0 + params.rho) * params.mass * params.wilson_r) / lift;
  } else {
    nu = mu / lift;
  }
  return {mu, nu, nu * std::sqrt(lift)};
}

double wilson_amplitude(const ModelParams& params) {
  if (params.variant != Variant::wilson) return 0.0;
  const Normalizations n = normalization_factors(params);
  return n.nu * std::pow(params.epsilon, params.rho) * params.wilson_r;
}

CoinSet CoinSet::from_transport(CliffordRep rep, ModelParams params, Normalizations norms, Matrix b,
                                Matrix v, Matrix m) {
  const Eigen::Index d = b.rows();
  if (b.cols() != d || v.rows() != d || v.cols() != d || m.rows() != d || m.cols() != d) {
    throw InvalidArgument("CoinSet: transport coins must be square and of equal size");
  }
  CoinSet c;
  c.rep_ = std::move(rep);
  c.params_ = params;
  c.norms_ = norms;
  c.w_minus_ = 0.5 * (v - b);
  c.w_plus_ = 0.5 * (v + b);
  c.w_zero_ = m - v;
  c.b_ = std::move(b);
  c.v_ = std::move(v);
  c.m_ = std::move(m);
  return c;
}

CoinSet CoinSet::from_jumps(CliffordRep rep, ModelParams params, Normalizations norms,
                            Matrix w_minus, Matrix w_zero, Matrix w_plus) {
  const Eigen::Index d = w_minus.rows();
  if (w_minus.cols() != d || w_zero.rows() != d || w_zero.cols() != d || w_plus.rows() != d ||
      w_plus.cols() != d) {
    throw InvalidArgument("CoinSet: jump coins must be square and of equal size");
  }
  CoinSet c;
  c.rep_ = std::move(rep);
  c.params_ = params;
  c.norms_ = norms;
  c.b_ = w_plus - w_minus;
  c.v_ = w_plus + w_minus;
  c.m_ = c.v_ + w_zero;
  c.w_minus_ = std::move(w_minus);
  c.w_zero_ = std::move(w_zero);
  c.w_plus_ = std::move(w_plus);
  return c;
}

namespace {

const Matrix& wilson_alpha(const CliffordRep& rep, WilsonAxis axis) {
  switch (axis) {
    case WilsonAxis::alpha0:
      return rep.alpha0;
    case WilsonAxis::alpha1:
      return rep.alpha1;
    case WilsonAxis::alpha2:
      if (!rep.alpha2) throw InvalidArgument("lambda = 2 requires a representation with alpha2");
      return *rep.alpha2;
  }
  throw InvalidArgument("unknown Wilson axis");
}

}  // namespace

CoinSet build_coins(const CliffordRep& rep, const ModelParams& params) {
  params.validate();
  const AlgebraReport algebra = verify_algebra(rep);
  if (!algebra.pass) {
    throw InvalidArgument("build_coins: representation fails the algebra check (" +
                          algebra.failures().front() + ")");
  }
  const Eigen::Index d = rep.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Normalizations n = normalization_factors(params);
  const double em = params.epsilon * params.mass;

  const Matrix m = n.mu * (id - kI * em * rep.alpha0);
  if (params.variant == Variant::massive_q0) {
    return CoinSet::from_transport(rep, params, n, n.mu * rep.alpha1, n.mu * id, m);
  }
  const Matrix& alpha = wilson_alpha(rep, params.lambda);
  const double er = std::pow(params.epsilon, params.rho) * params.wilson_r;
  const Matrix v = n.nu * (id + kI * er * alpha);
  return CoinSet::from_transport(rep, params, n, n.eta * rep.alpha1, v, m);
}

ConstraintReport check_unitarity(const CoinSet& coins, double tol) {
  const Matrix& wm = coins.w_minus();
  const Matrix& w0 = coins.w_zero();
  const Matrix& wp = coins.w_plus();
  const Matrix& b = coins.B();
  const Matrix& v = coins.V();
  const Matrix& m = coins.M();
  const Matrix bd = b.adjoint();
  const Matrix vd = v.adjoint();
  const Matrix md = m.adjoint();

  ConstraintReport r;
  r.tolerance = tol;
  r.add("sum-to-identity",
        identity_residual(wm.adjoint() * wm + wp.adjoint() * wp + w0.adjoint() * w0));
  r.add("adjacent-cross", max_abs(wm.adjoint() * w0 + w0.adjoint() * wp));
  r.add("opposite-cross", max_abs(wm.adjoint() * wp));
  r.add("VdagV=BdagB", max_abs(vd * v - bd * b));
  r.add("BdagV=VdagB", max_abs(bd * v - vd * b));
  r.add("2VdagV=VdagM+MdagV", max_abs(2.0 * vd * v - vd * m - md * v));
  r.add("BdagM=MdagB", max_abs(bd * m - md * b));
  r.add("MdagM=1", identity_residual(md * m));
  const double mirrored = std::max({
      identity_residual(wm * wm.adjoint() + wp * wp.adjoint() + w0 * w0.adjoint()),
      max_abs(w0 * wm.adjoint() + wp * w0.adjoint()),
      max_abs(wp * wm.adjoint()),
  });
  r.add("UU-dagger-side", mirrored);
  return r;
}

HamiltonianBlocks hamiltonian_blocks(const CoinSet& coins, double tol) {
  const ModelParams& p = coins.params();
  const Normalizations& n = coins.norms();
  const CliffordRep& rep = coins.rep();
  const Eigen::Index d = coins.dim();
  if (rep.dim() != d) throw InvalidArgument("hamiltonian_blocks: coin and representation sizes differ");

  HamiltonianBlocks h;
  h.A1 = 0.5 * (coins.B() + coins.B().adjoint());
  h.A0 = n.mu * rep.alpha0;
  if (p.variant == Variant::wilson) {
    const double coeff = n.nu * std::pow(p.epsilon, p.rho) * p.wilson_r / 2.0;
    h.wilson_block = coeff * wilson_alpha(rep, p.lambda);
  } else {
    h.wilson_block = Matrix::Zero(d, d);
  }

  // Quotient definitions, multiplied through so that m = 0 and r = 0 stay regular.
  const double em = p.epsilon * p.mass;
  const Matrix mass_from_m = 0.5 * kI * (coins.M() - coins.M().adjoint());
  const double mass_residual = max_abs(em * h.A0 - mass_from_m);
  if (!(mass_residual <= tol)) {
    throw ConsistencyError("hamiltonian_blocks: eps*m*A0 disagrees with i(M - M^dag)/2 by " +
                           format_double(mass_residual));
  }
  const Matrix wilson_from_v = -0.25 * kI * (coins.V() - coins.V().adjoint());
  const double wilson_residual = max_abs(h.wilson_block - wilson_from_v);
  if (!(wilson_residual <= tol)) {
    throw ConsistencyError("hamiltonian_blocks: Wilson block disagrees with -(i/2)(V - V^dag)/2 by " +
                           format_double(wilson_residual));
  }
  return h;
}

ResidualReport block_algebra(const HamiltonianBlocks& blocks, const Normalizations& norms,
                             double tol) {
  const Eigen::Index d = blocks.A0.rows();
  const Matrix id = Matrix::Identity(d, d);
  ResidualReport r;
  r.tolerance = tol;
  r.add("(A0)^2=mu^2", max_abs(blocks.A0 * blocks.A0 - norms.mu * norms.mu * id));
  r.add("(A1)^2=eta^2", max_abs(blocks.A1 * blocks.A1 - norms.eta * norms.eta * id));
  r.add("{A0,A1}=0", max_abs(anticommutator(blocks.A0, blocks.A1)));
  r.add("{W,A1}=0", max_abs(anticommutator(blocks.wilson_block, blocks.A1)));
  r.add("A0-hermitian", hermiticity_residual(blocks.A0));
  r.add("A1-hermitian", hermiticity_residual(blocks.A1));
  r.add("W-hermitian", hermiticity_residual(blocks.wilson_block));
  return r;
}

}  // namespace diracwalk
