#include "sshwire/oracle.hpp"

#include <cmath>
#include <vector>

#include "sshwire/errors.hpp"
#include "sshwire/lattice.hpp"
#include "sshwire/leads.hpp"
#include "sshwire/rk8.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

namespace {

using Cplx = std::complex<double>;

// Tridiagonal Hamiltonian of the composite chain. Array index i covers the
// left lead (0..Omega-1), the molecule (Omega..Omega+N-1), and the right
// lead. Field enters on molecular sites only.
struct CompositeChain {
  Eigen::VectorXd diag0;  // field-free diagonal (zero)
  Eigen::VectorXd off;
  Eigen::VectorXd dipole;  // |e| x_n on molecular sites, zero elsewhere
  int omega, n_mol;

  CompositeChain(const WireParams& params, const LatticeState& lattice,
                 int n_lead_sites) {
    omega = n_lead_sites;
    n_mol = params.n_sites;
    const int total = 2 * omega + n_mol;
    const double t_coup =
        std::sqrt(params.coupling_strength * params.lead_hopping);
    diag0 = Eigen::VectorXd::Zero(total);
    dipole = Eigen::VectorXd::Zero(total);
    off = Eigen::VectorXd::Zero(total - 1);
    for (int i = 0; i < total - 1; ++i) {
      if (i == omega - 1 || i == omega + n_mol - 1)
        off[i] = -t_coup;
      else if (i < omega - 1 || i >= omega + n_mol)
        off[i] = -params.lead_hopping;
      else
        off[i] = -params.t0 +
                 params.alpha * (lattice.u[i - omega + 1] - lattice.u[i - omega]);
    }
    for (int i = 0; i < n_mol; ++i)
      dipole[omega + i] =
          params.e_charge * site_position(params, i + 1, lattice.u[i]);
  }
};

double molecular_norm(const Eigen::MatrixXcd& psi, int omega, int n_mol) {
  return psi.middleRows(omega, n_mol).squaredNorm();
}

// Generic fixed-step RK8 over column states with a tridiagonal, possibly
// time-dependent Hamiltonian plus an optional absorbing term.
template <typename Rhs>
void rk8_propagate(Eigen::MatrixXcd& psi, double t0, double dt, int n_steps,
                   Rhs&& rhs, const std::function<void(int, double,
                                                       const Eigen::MatrixXcd&)>&
                                  on_step = nullptr) {
  const auto& tab = rk8_tableau();
  std::vector<Eigen::MatrixXcd> k(Rk8Tableau::kStages);
  Eigen::MatrixXcd work;
  double t = t0;
  for (int s = 0; s < n_steps; ++s) {
    for (int i = 0; i < Rk8Tableau::kStages; ++i) {
      work = psi;
      for (int j = 0; j < i; ++j) {
        const double w = dt * tab.a[i][j];
        if (w != 0.0) work += w * k[j];
      }
      k[i] = rhs(t + tab.c[i] * dt, work);
    }
    for (int i = 0; i < Rk8Tableau::kStages; ++i) {
      const double w = dt * tab.b[i];
      if (w != 0.0) psi += w * k[i];
    }
    t = t0 + (s + 1) * dt;
    if (on_step) on_step(s + 1, t, psi);
  }
}

Eigen::MatrixXcd apply_tridiagonal(const Eigen::VectorXd& diag,
                                   const Eigen::VectorXd& off,
                                   const Eigen::MatrixXcd& psi) {
  const Eigen::Index n = psi.rows();
  Eigen::MatrixXcd h_psi = diag.asDiagonal() * psi;
  h_psi.topRows(n - 1) += off.asDiagonal() * psi.bottomRows(n - 1);
  h_psi.bottomRows(n - 1) += off.asDiagonal() * psi.topRows(n - 1);
  return h_psi;
}

}  // namespace

LeadOracleResult finite_lead_oracle(const WireParams& params,
                                    const LatticeState& lattice,
                                    const Eigen::MatrixXcd& orbitals0,
                                    const LaserPulse& pulse,
                                    const LeadOracleConfig& config) {
  const int n_mol = params.n_sites;
  const int omega = config.n_lead_sites;
  if (orbitals0.rows() != n_mol)
    throw config_error("oracle orbitals must live on the molecular sites");
  if (omega < 4) throw config_error("oracle needs n_lead_sites >= 4");

  double t_final = config.t_final;
  const double reflection_time = omega * kHbar / (2.0 * params.lead_hopping);
  if (t_final <= 0.0) t_final = 0.9 * reflection_time;
  if (t_final >= reflection_time)
    throw config_error(
        "oracle lead too short for requested t_final; reflections return at " +
        std::to_string(reflection_time) + " fs");

  const int n_records =
      std::max(1, static_cast<int>(std::ceil(t_final / config.dt_record)));
  const double grid = t_final / n_records;

  LeadOracleResult result;
  result.times.setLinSpaced(n_records + 1, 0.0, t_final);
  result.norm_exact.resize(n_records + 1);
  result.norm_markovian.resize(n_records + 1);
  result.norm_nonmarkovian.setZero(n_records + 1);
  result.j_left_exact.resize(n_records + 1);
  result.j_right_exact.resize(n_records + 1);
  result.window_start = 10.0 * kHbar / params.lead_hopping;

  // --- exact composite propagation ---
  CompositeChain chain(params, lattice, omega);
  const int total = 2 * omega + n_mol;
  Eigen::MatrixXcd psi_full = Eigen::MatrixXcd::Zero(total, orbitals0.cols());
  psi_full.middleRows(omega, n_mol) = orbitals0;
  const double t_coup =
      std::sqrt(params.coupling_strength * params.lead_hopping);

  auto record_exact = [&](int r, const Eigen::MatrixXcd& psi) {
    result.norm_exact[r] = molecular_norm(psi, omega, n_mol);
    // bond flux out of the molecule: d/dt sum_{n in lead} |psi_n|^2
    Cplx left = 0.0, right = 0.0;
    for (Eigen::Index j = 0; j < psi.cols(); ++j) {
      left += std::conj(psi(omega - 1, j)) * psi(omega, j);
      right += std::conj(psi(omega + n_mol, j)) * psi(omega + n_mol - 1, j);
    }
    result.j_left_exact[r] = (2.0 / kHbar) * (-t_coup) * left.imag();
    result.j_right_exact[r] = (2.0 / kHbar) * (-t_coup) * right.imag();
  };

  if (pulse.kind == PulseKind::Off) {
    // Time-independent composite chain: propagate by eigendecomposition.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(chain.diag0, chain.off);
    const Eigen::MatrixXd& vecs = es.eigenvectors();
    const Eigen::VectorXd& vals = es.eigenvalues();
    const Eigen::MatrixXcd coef = vecs.transpose() * psi_full;
    Eigen::MatrixXcd psi_t(total, orbitals0.cols());
    for (int r = 0; r <= n_records; ++r) {
      const double t = result.times[r];
      Eigen::VectorXcd phase(total);
      for (int k = 0; k < total; ++k)
        phase[k] = std::exp(Cplx(0.0, -vals[k] * t / kHbar));
      psi_t.noalias() = vecs * (phase.asDiagonal() * coef);
      record_exact(r, psi_t);
    }
  } else {
    const int sub = std::max(
        1, static_cast<int>(std::llround(grid / config.dt_markov)));
    const double dt = grid / sub;
    record_exact(0, psi_full);
    Eigen::VectorXd diag(total);
    for (int r = 1; r <= n_records; ++r) {
      rk8_propagate(psi_full, result.times[r - 1], dt, sub,
                    [&](double t, const Eigen::MatrixXcd& p) {
                      diag = chain.dipole * field_value(pulse, t);
                      Eigen::MatrixXcd h = apply_tridiagonal(diag, chain.off, p);
                      return (Cplx(0.0, -1.0 / kHbar) * h).eval();
                    });
      record_exact(r, psi_full);
    }
  }

  // --- Markovian companion: P = identity, coupling always on ---
  {
    Eigen::VectorXd mdiag, moff;
    Eigen::MatrixXcd psi = orbitals0;
    const double rate = params.coupling_strength / kHbar;
    result.norm_markovian[0] = psi.squaredNorm();
    const int sub = std::max(
        1, static_cast<int>(std::llround(grid / config.dt_markov)));
    const double dt = grid / sub;
    for (int r = 1; r <= n_records; ++r) {
      rk8_propagate(psi, result.times[r - 1], dt, sub,
                    [&](double t, const Eigen::MatrixXcd& p) {
                      electronic_tridiagonal(params, lattice.u,
                                             field_value(pulse, t), mdiag,
                                             moff);
                      Eigen::MatrixXcd d =
                          Cplx(0.0, -1.0 / kHbar) *
                          apply_tridiagonal(mdiag, moff, p);
                      d.row(0) -= rate * p.row(0);
                      d.row(n_mol - 1) -= rate * p.row(n_mol - 1);
                      return d;
                    });
      result.norm_markovian[r] = psi.squaredNorm();
    }
  }

  // --- non-Markovian reference: memory-kernel convolution, P = identity ---
  if (config.include_nonmarkovian) {
    const int sub =
        std::max(1, static_cast<int>(std::llround(grid / config.dt_volterra)));
    const double h = grid / sub;
    const int n_steps = n_records * sub;
    Eigen::VectorXd kern(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k)
      kern[k] = memory_kernel(k * h, params.lead_hopping);

    const Eigen::Index n_orb = orbitals0.cols();
    Eigen::MatrixXcd psi = orbitals0;
    // boundary-amplitude histories per orbital
    Eigen::MatrixXcd hist_l(n_steps + 1, n_orb), hist_r(n_steps + 1, n_orb);
    hist_l.row(0) = psi.row(0);
    hist_r.row(0) = psi.row(n_mol - 1);
    result.norm_nonmarkovian[0] = psi.squaredNorm();

    Eigen::VectorXd mdiag, moff;
    const double g = params.coupling_strength;  // t_coup^2 / t_lead
    const double tl = params.lead_hopping;
    // i hbar dpsi_n = (H psi)_n + (t_coup^2 / i hbar) delta_{n,b} I_b with
    // I_b = int_0^t K(t - tau) psi_b(tau) dtau; trapezoidal history,
    // Heun predictor-corrector in time.
    auto convolve = [&](int k, const Eigen::MatrixXcd& hist) {
      Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(n_orb);
      for (int j = 1; j < k; ++j) acc += kern[k - j] * hist.row(j);
      acc += 0.5 * (kern[k] * hist.row(0) + kern[0] * hist.row(k));
      return (h * acc).eval();
    };
    auto deriv = [&](double t, const Eigen::MatrixXcd& p,
                     const Eigen::RowVectorXcd& conv_l,
                     const Eigen::RowVectorXcd& conv_r) {
      electronic_tridiagonal(params, lattice.u, field_value(pulse, t), mdiag,
                             moff);
      Eigen::MatrixXcd d =
          Cplx(0.0, -1.0 / kHbar) * apply_tridiagonal(mdiag, moff, p);
      // (t_coup^2 / (i hbar)) convolution term, divided by a further i hbar
      const double w = -g * tl / (kHbar * kHbar);
      d.row(0) += w * conv_l;
      d.row(n_mol - 1) += w * conv_r;
      return d;
    };
    for (int k = 1; k <= n_steps; ++k) {
      const double t_prev = (k - 1) * h;
      // predictor: treat the new history samples as frozen at step k-1
      hist_l.row(k) = hist_l.row(k - 1);
      hist_r.row(k) = hist_r.row(k - 1);
      const Eigen::MatrixXcd f1 =
          deriv(t_prev, psi, convolve(k - 1, hist_l), convolve(k - 1, hist_r));
      Eigen::MatrixXcd pred = psi + h * f1;
      hist_l.row(k) = pred.row(0);
      hist_r.row(k) = pred.row(n_mol - 1);
      const Eigen::MatrixXcd f2 =
          deriv(k * h, pred, convolve(k, hist_l), convolve(k, hist_r));
      psi += 0.5 * h * (f1 + f2);
      hist_l.row(k) = psi.row(0);
      hist_r.row(k) = psi.row(n_mol - 1);
      if (k % sub == 0) result.norm_nonmarkovian[k / sub] = psi.squaredNorm();
    }
  }

  double max_rel = 0.0;
  for (int r = 0; r <= n_records; ++r) {
    if (result.times[r] < result.window_start) continue;
    const double rel = std::abs(result.norm_markovian[r] -
                                result.norm_exact[r]) /
                       result.norm_exact[r];
    max_rel = std::max(max_rel, rel);
  }
  result.max_rel_deviation = max_rel;
  return result;
}

}  // namespace sshwire
