#include "diracwalk/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace diracwalk {

namespace {

void require_shape(const WalkOperator& walk, const LatticeState& psi, const char* what) {
  if (psi.sites() != walk.sites() || psi.dim() != walk.dim()) {
    throw InvalidArgument(std::string(what) + ": state shape does not match the walk operator");
  }
}

// Site offset folded into [−N/2, N − N/2).
long wrap(long offset, long n) {
  const long half = n / 2;
  return ((offset + half) % n + n) % n - half;
}

}  // namespace

Trajectory evolve_one_step(const WalkOperator& walk, const LatticeState& psi0, int steps) {
  require_shape(walk, psi0, "evolve_one_step");
  if (steps < 0) throw InvalidArgument("evolve_one_step: steps must be nonnegative");
  Trajectory t;
  t.params = walk.coins().params();
  t.scheme = Scheme::one_step;
  t.states.reserve(static_cast<std::size_t>(steps) + 1);
  t.states.push_back(psi0);
  for (int j = 0; j < steps; ++j) t.states.push_back(walk.apply(t.states.back()));
  return t;
}

Trajectory evolve_two_step(const WalkOperator& walk, const LatticeState& psi0,
                           const LatticeState& psi1, int steps) {
  require_shape(walk, psi0, "evolve_two_step");
  require_shape(walk, psi1, "evolve_two_step");
  if (steps < 0) throw InvalidArgument("evolve_two_step: steps must be nonnegative");
  Trajectory t;
  t.params = walk.coins().params();
  t.scheme = Scheme::two_step;
  t.states.reserve(static_cast<std::size_t>(steps) + 1);
  t.states.push_back(psi0);
  if (steps == 0) return t;
  LatticeState first = psi1;
  first.set_step(psi0.step() + 1);
  t.states.push_back(std::move(first));
  for (int j = 1; j < steps; ++j) {
    const LatticeState& prev = t.states[t.states.size() - 2];
    const LatticeState& cur = t.states.back();
    Matrix next = prev.amplitudes() + walk.apply(cur).amplitudes() -
                  walk.apply_adjoint(cur).amplitudes();
    t.states.emplace_back(std::move(next), cur.step() + 1);
  }
  return t;
}

Vector branch_spinor(const CoinSet& coins, double k, Branch branch) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(momentum_symbol(coins, k));
  const Eigen::Index col = branch == Branch::plus ? es.eigenvalues().size() - 1 : 0;
  return es.eigenvectors().col(col);
}

namespace {

Matrix branch_projector(const CoinSet& coins, double k, double probe, Branch branch) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(momentum_symbol(coins, k));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().cwiseAbs().minCoeff() <= 1e-12 * scale) {
    es.compute(momentum_symbol(coins, k + probe));
  }
  const Eigen::Index d = coins.dim();
  Matrix p = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool plus = es.eigenvalues()(i) >= 0.0;
    if (plus == (branch == Branch::plus)) {
      p.noalias() += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  return p;
}

}  // namespace

LatticeState make_wave_packet(const CoinSet& coins, Eigen::Index sites, const WavePacket& packet) {
  const double eps = coins.params().epsilon;
  const double edge = std::numbers::pi / eps;
  if (!(std::abs(packet.center_k) < edge)) {
    throw InvalidArgument("make_wave_packet: center_k must lie strictly inside the Brillouin zone");
  }
  if (!(packet.width >= 0.0) || !std::isfinite(packet.width)) {
    throw InvalidArgument("make_wave_packet: width must be nonnegative");
  }
  if (sites < 3) throw InvalidArgument("make_wave_packet: need at least 3 sites");
  const Eigen::Index d = coins.dim();
  const long n = static_cast<long>(sites);
  const long pc = static_cast<long>(packet.center_site.value_or(sites / 2));
  if (pc < 0 || pc >= n) throw InvalidArgument("make_wave_packet: center_site out of range");

  const Vector chi =
      packet.polarization ? *packet.polarization : branch_spinor(coins, packet.center_k, packet.branch);
  if (chi.size() != d) throw InvalidArgument("make_wave_packet: polarization has the wrong size");

  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * eps);
  const double sigma = packet.width * dk;
  const double probe = 1e-6 * dk;
  const long q_nearest = std::lround(packet.center_k / dk);

  Matrix amps = Matrix::Zero(d, sites);
  for (long q = -n / 2; q < n - n / 2; ++q) {
    const double kq = lattice_momentum(q, sites, eps);
    double weight = 0.0;
    if (packet.width == 0.0) {
      weight = wrap(q - q_nearest, n) == 0 ? 1.0 : 0.0;
    } else {
      const double delta = std::remainder(kq - packet.center_k, 2.0 * edge);
      weight = std::exp(-0.5 * (delta / sigma) * (delta / sigma));
    }
    if (weight < 1e-18) continue;
    const Vector coeff = weight * (branch_projector(coins, kq, probe, packet.branch) * chi);
    for (long p = 0; p < n; ++p) {
      const long phase_index = ((q * (p - pc)) % n + n) % n;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase_index) /
                           static_cast<double>(n);
      amps.col(p) += std::polar(1.0, angle) * coeff;
    }
  }
  const double norm = amps.norm();
  if (!(norm > 0.0)) {
    throw InvalidArgument("make_wave_packet: polarization has no component on the chosen branch");
  }
  amps /= norm;
  return LatticeState(std::move(amps), 0);
}

Observables observables(const LatticeState& psi, std::optional<Eigen::Index> center,
                        double support_tol) {
  const long n = static_cast<long>(psi.sites());
  const long c = static_cast<long>(center.value_or(psi.sites() / 2));
  Observables o;
  o.norm = psi.norm();
  if (!(o.norm > 0.0)) throw InvalidArgument("observables: zero state");
  o.center = static_cast<double>(c);
  o.distribution.resize(static_cast<std::size_t>(n));
  const double n2 = o.norm * o.norm;
  double mean = 0.0;
  for (long p = 0; p < n; ++p) {
    const double prob = psi.amplitudes().col(p).squaredNorm() / n2;
    o.distribution[static_cast<std::size_t>(p)] = prob;
    const long offset = wrap(p - c, n);
    mean += prob * static_cast<double>(offset);
    if (prob > support_tol) {
      o.support_radius = std::max(o.support_radius, static_cast<int>(std::abs(offset)));
    }
  }
  double var = 0.0;
  for (long p = 0; p < n; ++p) {
    const double x = static_cast<double>(wrap(p - c, n)) - mean;
    var += o.distribution[static_cast<std::size_t>(p)] * x * x;
  }
  o.mean_position = static_cast<double>(c) + mean;
  o.std_position = std::sqrt(var);
  return o;
}

double group_velocity_estimate(const Trajectory& traj) {
  if (traj.states.size() < 11) throw InvalidArgument("group_velocity_estimate: need at least 10 steps");
  const long n = static_cast<long>(traj.states.front().sites());
  const long start = std::lround(observables(traj.states.front()).mean_position);
  const Eigen::Index center = ((start % n) + n) % n;

  const auto count = static_cast<double>(traj.states.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    const double x = static_cast<double>(j);
    const double y = observables(traj.states[j], center).mean_position;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) return;
  const Eigen::Index d = traj.states.front().dim();
  os << "step,site";
  for (Eigen::Index c = 0; c < d; ++c) os << ",re" << c;
  for (Eigen::Index c = 0; c < d; ++c) os << ",im" << c;
  os << ",prob\n";
  for (const LatticeState& s : traj.states) {
    const double n2 = s.amplitudes().squaredNorm();
    for (Eigen::Index p = 0; p < s.sites(); ++p) {
      os << s.step() << ',' << p;
      for (Eigen::Index c = 0; c < d; ++c) os << ',' << format_double(s.amplitudes()(c, p).real());
      for (Eigen::Index c = 0; c < d; ++c) os << ',' << format_double(s.amplitudes()(c, p).imag());
      const double prob = n2 > 0.0 ? s.amplitudes().col(p).squaredNorm() / n2 : 0.0;
      os << ',' << format_double(prob) << '\n';
    }
  }
}

}  // namespace diracwalk
