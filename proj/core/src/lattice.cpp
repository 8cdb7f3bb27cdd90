#include "diracwalk/lattice.hpp"

#include <cmath>
#include <numbers>

#include "diracwalk/spectral.hpp"

namespace diracwalk {

LatticeState::LatticeState(Eigen::Index sites, Eigen::Index dim, long step)
    : amps_(Matrix::Zero(dim, sites)), step_(step) {
  if (sites < 1 || dim < 1) throw InvalidArgument("LatticeState: sites and dim must be positive");
}

LatticeState::LatticeState(Matrix amplitudes, long step) : amps_(std::move(amplitudes)), step_(step) {}

LatticeState LatticeState::delta(Eigen::Index sites, Eigen::Index site, const Vector& spinor) {
  if (site < 0 || site >= sites) throw InvalidArgument("LatticeState::delta: site out of range");
  LatticeState s(sites, spinor.size());
  s.amps_.col(site) = spinor;
  return s;
}

Vector LatticeState::flattened() const {
  return Eigen::Map<const Vector>(amps_.data(), amps_.size());
}

WalkOperator::WalkOperator(CoinSet coins, Eigen::Index sites)
    : coins_(std::move(coins)), sites_(sites) {
  if (sites_ < 3) throw InvalidArgument("walk operator needs at least 3 sites");
}

void WalkOperator::check(const LatticeState& psi) const {
  if (psi.sites() != sites_ || psi.dim() != dim()) {
    throw InvalidArgument("state shape " + std::to_string(psi.dim()) + "x" +
                          std::to_string(psi.sites()) + " does not match walk " +
                          std::to_string(dim()) + "x" + std::to_string(sites_));
  }
}

namespace {

// out_p = to_left·in_{p+1} + to_right·in_{p−1} + on_site·in_p, periodic.
Matrix band_apply(const Matrix& in, const Matrix& to_left, const Matrix& on_site,
                  const Matrix& to_right) {
  const Eigen::Index n = in.cols();
  Matrix out = on_site * in;
  out.leftCols(n - 1).noalias() += to_left * in.rightCols(n - 1);
  out.col(n - 1).noalias() += to_left * in.col(0);
  out.rightCols(n - 1).noalias() += to_right * in.leftCols(n - 1);
  out.col(0).noalias() += to_right * in.col(n - 1);
  return out;
}

Matrix dense_band(Eigen::Index sites, const Matrix& to_left, const Matrix& on_site,
                  const Matrix& to_right) {
  const Eigen::Index d = on_site.rows();
  // Shift matrices on site space: (T)_{p,p-1} = 1, (T^-1)_{p,p+1} = 1.
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(sites, sites);
  for (Eigen::Index p = 0; p < sites; ++p) shift(p, (p + sites - 1) % sites) = 1.0;
  const Eigen::MatrixXd inverse_shift = shift.transpose();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(sites, sites);

  Matrix out = Matrix::Zero(sites * d, sites * d);
  auto add_kron = [&](const Eigen::MatrixXd& site_op, const Matrix& coin) {
    for (Eigen::Index p = 0; p < sites; ++p) {
      for (Eigen::Index q = 0; q < sites; ++q) {
        if (site_op(p, q) != 0.0) out.block(p * d, q * d, d, d) += site_op(p, q) * coin;
      }
    }
  };
  add_kron(inverse_shift, to_left);
  add_kron(shift, to_right);
  add_kron(id, on_site);
  return out;
}

}  // namespace

LatticeState WalkOperator::apply(const LatticeState& psi) const {
  check(psi);
  return LatticeState(
      band_apply(psi.amplitudes(), coins_.w_minus(), coins_.w_zero(), coins_.w_plus()),
      psi.step() + 1);
}

LatticeState WalkOperator::apply_adjoint(const LatticeState& psi) const {
  check(psi);
  // U† = W₋₁†T₁ + W₁†T₁⁻¹ + W₀†
  return LatticeState(band_apply(psi.amplitudes(), coins_.w_plus().adjoint(),
                                 coins_.w_zero().adjoint(), coins_.w_minus().adjoint()),
                      psi.step());
}

WalkOperator build_walk_operator(const CoinSet& coins, Eigen::Index sites) {
  return WalkOperator(coins, sites);
}

Matrix dense_walk_matrix(const WalkOperator& walk) {
  if (walk.sites() > 64) throw InvalidArgument("dense_walk_matrix: limited to N <= 64");
  const CoinSet& c = walk.coins();
  return dense_band(walk.sites(), c.w_minus(), c.w_zero(), c.w_plus());
}

LocalHamiltonian::LocalHamiltonian(HamiltonianBlocks blocks, Eigen::Index sites, Matrix minus,
                                   Matrix diagonal, Matrix plus)
    : blocks_(std::move(blocks)),
      sites_(sites),
      minus_(std::move(minus)),
      diagonal_(std::move(diagonal)),
      plus_(std::move(plus)) {
  if (sites_ < 3) throw InvalidArgument("local Hamiltonian needs at least 3 sites");
}

LatticeState LocalHamiltonian::apply(const LatticeState& psi) const {
  if (psi.sites() != sites_ || psi.dim() != diagonal_.rows()) {
    throw InvalidArgument("LocalHamiltonian::apply: state shape mismatch");
  }
  return LatticeState(band_apply(psi.amplitudes(), minus_, diagonal_, plus_), psi.step());
}

double LocalHamiltonian::hermiticity_residual() const {
  return std::max(max_abs(minus_ - plus_.adjoint()), max_abs(diagonal_ - diagonal_.adjoint()));
}

Matrix LocalHamiltonian::dense() const {
  if (sites_ > 64) throw InvalidArgument("LocalHamiltonian::dense: limited to N <= 64");
  return dense_band(sites_, minus_, diagonal_, plus_);
}

LocalHamiltonian local_hamiltonian(const WalkOperator& walk, double tol) {
  const CoinSet& c = walk.coins();
  // Route (i): (i/2)(U − U†), coefficient by coefficient of T⁻¹, 1, T.
  const Matrix minus_walk = 0.5 * kI * (c.w_minus() - c.w_plus().adjoint());
  const Matrix plus_walk = 0.5 * kI * (c.w_plus() - c.w_minus().adjoint());
  const Matrix diag_walk = 0.5 * kI * (c.w_zero() - c.w_zero().adjoint());

  // Route (ii): A¹(−iD₁) + W(−L) + εmA⁰ with D₁ = (T⁻¹ − T)/2, L = T⁻¹ + T − 2.
  HamiltonianBlocks blocks = hamiltonian_blocks(c, tol);
  const double em = c.params().epsilon * c.params().mass;
  const Matrix minus_blocks = -0.5 * kI * blocks.A1 - blocks.wilson_block;
  const Matrix plus_blocks = 0.5 * kI * blocks.A1 - blocks.wilson_block;
  const Matrix diag_blocks = 2.0 * blocks.wilson_block + em * blocks.A0;

  const double mismatch = std::max({max_abs(minus_walk - minus_blocks),
                                    max_abs(plus_walk - plus_blocks),
                                    max_abs(diag_walk - diag_blocks)});
  if (!(mismatch <= tol)) {
    throw ConsistencyError("local_hamiltonian: (i/2)(U - U^dag) and the block assembly differ by " +
                           format_double(mismatch));
  }
  LocalHamiltonian h(std::move(blocks), walk.sites(), minus_walk, diag_walk, plus_walk);
  const double herm = h.hermiticity_residual();
  if (!(herm <= tol)) {
    throw ConsistencyError("local_hamiltonian: H is not Hermitian (" + format_double(herm) + ")");
  }
  return h;
}

void require_in_brillouin_zone(double k, double epsilon, const char* where) {
  const double edge = std::numbers::pi / epsilon;
  if (!(std::abs(k) <= edge * (1.0 + 1e-12))) {
    throw InvalidArgument(std::string(where) + ": k = " + format_double(k) +
                          " lies outside the Brillouin zone [-pi/eps, pi/eps]");
  }
}

Matrix momentum_symbol(const CoinSet& coins, double k) {
  const ModelParams& p = coins.params();
  require_in_brillouin_zone(k, p.epsilon, "momentum_symbol");
  const HamiltonianBlocks blocks = hamiltonian_blocks(coins);
  const double eps = p.epsilon;
  const double transport = std::sin(k * eps) / eps;
  const double laplacian = 2.0 * (1.0 - std::cos(k * eps)) / eps;
  return transport * blocks.A1 + p.mass * blocks.A0 + laplacian * blocks.wilson_block;
}

Matrix walk_symbol(const CoinSet& coins, double k) {
  const double phase = k * coins.params().epsilon;
  return coins.w_minus() * std::exp(kI * phase) + coins.w_plus() * std::exp(-kI * phase) +
         coins.w_zero();
}

double symbol_square_residual(const CoinSet& coins, std::span<const double> k_grid) {
  const ModelParams& p = coins.params();
  const ModelTag tag = ModelTag::dqw(p.lambda);
  const Matrix id = Matrix::Identity(coins.dim(), coins.dim());
  double worst = 0.0;
  for (double k : k_grid) {
    const Matrix h = momentum_symbol(coins, k);
    worst = std::max(worst, max_abs(h * h - F_of_k(tag, p, k) * id));
  }
  return worst;
}

double lattice_momentum(long q, Eigen::Index sites, double epsilon) {
  const long n = static_cast<long>(sites);
  long folded = ((q % n) + n) % n;
  if (2 * folded >= n) folded -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(folded) / (static_cast<double>(n) * epsilon);
}

}  // namespace diracwalk
