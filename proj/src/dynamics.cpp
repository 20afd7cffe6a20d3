#include "sshwire/dynamics.hpp"

#include <cmath>

#include "sshwire/errors.hpp"
#include "sshwire/lattice.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

Eigen::MatrixXcd density_matrix(const OrbitalSet& orbitals) {
  return orbitals.occupancy * (orbitals.amplitudes.conjugate() *
                               orbitals.amplitudes.transpose());
}

OrbitalSet initial_orbitals(const WireParams& params,
                            const LatticeState& lattice, double field) {
  const int n = params.n_sites;
  Eigen::VectorXd diag, off;
  electronic_tridiagonal(params, lattice.u, field, diag, off);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off);
  OrbitalSet out;
  out.amplitudes =
      es.eigenvectors().leftCols(n / 2).cast<std::complex<double>>();
  out.occupancy = 2.0;
  return out;
}

void nuclear_derivatives(const WireParams& params,
                         const TrajectoryState& state,
                         const Eigen::MatrixXcd& rho, double field,
                         Eigen::VectorXd& du, Eigen::VectorXd& dp) {
  const int n = params.n_sites;
  du = Eigen::VectorXd::Zero(n);
  dp = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd& u = state.lattice.u;
  const Eigen::VectorXd& p = state.lattice.p;
  for (int i = 1; i < n - 1; ++i) {
    du[i] = p[i] / params.mass;
    dp[i] = -params.k_spring * (2.0 * u[i] - u[i + 1] - u[i - 1]) +
            2.0 * params.alpha *
                (rho(i, i + 1).real() - rho(i, i - 1).real()) -
            params.e_charge * field * (rho(i, i).real() - 1.0);
  }
}

Eigen::MatrixXcd orbital_derivatives(const WireParams& params,
                                     const TrajectoryState& state,
                                     double field, const GammaMatrix& gamma) {
  const int n = params.n_sites;
  Eigen::VectorXd diag, off;
  electronic_tridiagonal(params, state.lattice.u, field, diag, off);
  const Eigen::MatrixXcd& psi = state.orbitals.amplitudes;
  Eigen::MatrixXcd h_psi = diag.asDiagonal() * psi;
  h_psi.topRows(n - 1) += off.asDiagonal() * psi.bottomRows(n - 1);
  h_psi.bottomRows(n - 1) += off.asDiagonal() * psi.topRows(n - 1);
  const std::complex<double> minus_i_over_hbar(0.0, -1.0 / kHbar);
  return minus_i_over_hbar * h_psi -
         (params.coupling_strength / kHbar) * (gamma.matrix * psi);
}

TrajectoryEngine::TrajectoryEngine(const WireParams& params,
                                   const DynamicsOptions& options)
    : params_(params), options_(options) {}

void TrajectoryEngine::rhs(double t, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& p,
                           const Eigen::MatrixXcd& psi,
                           const LaserPulse& pulse, Derivative& out) {
  const int n = params_.n_sites;
  const double field = field_value(pulse, t);
  electronic_tridiagonal(params_, u, field, diag_, off_);

  // i hbar dpsi/dt = H psi - i g s Gamma psi
  out.dpsi = diag_.asDiagonal() * psi;
  out.dpsi.topRows(n - 1) += off_.asDiagonal() * psi.bottomRows(n - 1);
  out.dpsi.bottomRows(n - 1) += off_.asDiagonal() * psi.topRows(n - 1);
  out.dpsi *= std::complex<double>(0.0, -1.0 / kHbar);

  if (options_.leads_enabled) {
    const double s = coupling_switch(t, options_.ramp_duration);
    const double rate = params_.coupling_strength * s / kHbar;
    if (rate != 0.0) {
      if (options_.policy == ProjectorPolicy::AboveFermi) {
        projector_ws_.compute(diag_, off_, params_.fermi_energy, action_);
        out.dpsi.noalias() -=
            rate * action_.v_left.cast<std::complex<double>>() *
            (action_.v_left.transpose().cast<std::complex<double>>() * psi);
        out.dpsi.noalias() -=
            rate * action_.v_right.cast<std::complex<double>>() *
            (action_.v_right.transpose().cast<std::complex<double>>() * psi);
      } else {
        out.dpsi.row(0) -= rate * psi.row(0);
        out.dpsi.row(n - 1) -= rate * psi.row(n - 1);
      }
    }
  }

  // mean-field tridiagonal pieces of rho
  rho_diag_.resize(n);
  rho_off_.resize(n - 1);
  for (int i = 0; i < n; ++i) rho_diag_[i] = occ_ * psi.row(i).squaredNorm();
  for (int i = 0; i < n - 1; ++i)
    rho_off_[i] = occ_ * psi.row(i).dot(psi.row(i + 1)).real();

  out.du.setZero(n);
  out.dp.setZero(n);
  for (int i = 1; i < n - 1; ++i) {
    out.du[i] = p[i] / params_.mass;
    out.dp[i] = -params_.k_spring * (2.0 * u[i] - u[i + 1] - u[i - 1]) +
                2.0 * params_.alpha * (rho_off_[i] - rho_off_[i - 1]) -
                params_.e_charge * field * (rho_diag_[i] - 1.0);
  }
}

void TrajectoryEngine::step(TrajectoryState& state, const LaserPulse& pulse) {
  const auto& tab = rk8_tableau();
  const double dt = options_.dt;
  const int n = params_.n_sites;
  const Eigen::Index n_occ = state.orbitals.amplitudes.cols();
  occ_ = state.orbitals.occupancy;

  prev_norms_.resize(n_occ);
  for (Eigen::Index j = 0; j < n_occ; ++j)
    prev_norms_[j] = state.orbitals.amplitudes.col(j).norm();

  for (int i = 0; i < Rk8Tableau::kStages; ++i) {
    u_stage_ = state.lattice.u;
    p_stage_ = state.lattice.p;
    psi_stage_ = state.orbitals.amplitudes;
    for (int j = 0; j < i; ++j) {
      const double w = dt * tab.a[i][j];
      if (w == 0.0) continue;
      u_stage_ += w * stages_[j].du;
      p_stage_ += w * stages_[j].dp;
      psi_stage_ += w * stages_[j].dpsi;
    }
    rhs(state.time + tab.c[i] * dt, u_stage_, p_stage_, psi_stage_, pulse,
        stages_[i]);
  }
  for (int i = 0; i < Rk8Tableau::kStages; ++i) {
    const double w = dt * tab.b[i];
    if (w == 0.0) continue;
    state.lattice.u += w * stages_[i].du;
    state.lattice.p += w * stages_[i].dp;
    state.orbitals.amplitudes += w * stages_[i].dpsi;
  }
  state.time += dt;

  for (Eigen::Index j = 0; j < n_occ; ++j) {
    const double norm = state.orbitals.amplitudes.col(j).norm();
    if (norm > prev_norms_[j] + options_.norm_growth_tol)
      throw numerical_error("orbital norm grew by " +
                            std::to_string(norm - prev_norms_[j]) +
                            " in one step; dt too large");
  }
}

InstantObservables TrajectoryEngine::observe(const TrajectoryState& state,
                                             const LaserPulse& pulse) const {
  const int n = params_.n_sites;
  const Eigen::MatrixXcd& psi = state.orbitals.amplitudes;
  InstantObservables out;
  out.field = field_value(pulse, state.time);
  out.trace = state.orbitals.occupancy * psi.squaredNorm();

  Eigen::VectorXd diag, off;
  electronic_tridiagonal(params_, state.lattice.u, out.field, diag, off);
  ProjectorAction action;
  projector_ws_.compute(diag, off, params_.fermi_energy, action);
  out.energies = action.energies;

  if (!options_.leads_enabled) return out;
  const double s = coupling_switch(state.time, options_.ramp_duration);
  const double scale = (2.0 * params_.e_charge / kHbar) *
                       params_.coupling_strength * s *
                       state.orbitals.occupancy;
  if (options_.policy == ProjectorPolicy::AboveFermi) {
    out.j_left =
        scale *
        (action.v_left.transpose().cast<std::complex<double>>() * psi)
            .squaredNorm();
    out.j_right =
        scale *
        (action.v_right.transpose().cast<std::complex<double>>() * psi)
            .squaredNorm();
  } else {
    out.j_left = scale * psi.row(0).squaredNorm();
    out.j_right = scale * psi.row(n - 1).squaredNorm();
  }
  return out;
}

TrajectoryRecord TrajectoryEngine::run(TrajectoryState state,
                                       const LaserPulse& pulse, double t_final,
                                       const RecorderOptions& recorder) {
  const double dt = options_.dt;
  if (dt <= 0) throw config_error("dt must be positive");
  const int steps_per_record =
      std::max(1, static_cast<int>(std::llround(recorder.interval / dt)));
  const double grid = steps_per_record * dt;
  const int n_records = std::max(
      1, static_cast<int>(std::ceil((t_final - state.time) / grid - 1e-9)));

  const std::vector<int> window =
      gap_window_indices(params_.n_sites, recorder.dressed_count);

  TrajectoryRecord record;
  record.times.resize(n_records + 1);
  record.field.resize(n_records + 1);
  record.j_left.resize(n_records + 1);
  record.j_right.resize(n_records + 1);
  record.q_left.resize(n_records + 1);
  record.q_right.resize(n_records + 1);
  record.dressed_levels.resize(window.empty() ? 0 : n_records + 1,
                               window.size());
  record.initial_trace = state.orbitals.occupancy *
                         state.orbitals.amplitudes.squaredNorm();

  for (int r = 0; r <= n_records; ++r) {
    if (r > 0)
      for (int k = 0; k < steps_per_record; ++k) step(state, pulse);
    const InstantObservables obs = observe(state, pulse);
    record.times[r] = state.time;
    record.field[r] = obs.field;
    record.j_left[r] = obs.j_left;
    record.j_right[r] = obs.j_right;
    if (r == 0) {
      record.q_left[0] = 0.0;
      record.q_right[0] = 0.0;
    } else {
      record.q_left[r] = record.q_left[r - 1] +
                         0.5 * grid * (record.j_left[r - 1] + obs.j_left);
      record.q_right[r] = record.q_right[r - 1] +
                          0.5 * grid * (record.j_right[r - 1] + obs.j_right);
    }
    for (std::size_t c = 0; c < window.size(); ++c)
      record.dressed_levels(r, c) = obs.energies[window[c]];
  }
  record.final_norm =
      state.orbitals.occupancy * state.orbitals.amplitudes.squaredNorm();
  return record;
}

double TrajectoryEngine::trajectory_energy(const WireParams& params,
                                           const TrajectoryState& state) {
  const int n = params.n_sites;
  Eigen::VectorXd diag, off;
  electronic_tridiagonal(params, state.lattice.u, 0.0, diag, off);
  const Eigen::MatrixXcd& psi = state.orbitals.amplitudes;
  Eigen::MatrixXcd h_psi = diag.asDiagonal() * psi;
  h_psi.topRows(n - 1) += off.asDiagonal() * psi.bottomRows(n - 1);
  h_psi.bottomRows(n - 1) += off.asDiagonal() * psi.topRows(n - 1);
  double e_el = 0.0;
  for (Eigen::Index j = 0; j < psi.cols(); ++j)
    e_el += psi.col(j).dot(h_psi.col(j)).real();
  e_el *= state.orbitals.occupancy;

  double elastic = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    const double d = state.lattice.u[i + 1] - state.lattice.u[i];
    elastic += d * d;
  }
  elastic *= 0.5 * params.k_spring;
  const double kinetic =
      state.lattice.p.squaredNorm() / (2.0 * params.mass);
  return e_el + elastic + kinetic;
}

TrajectoryRecord run_trajectory(const WireParams& params,
                                const TrajectoryState& initial,
                                const LaserPulse& pulse, double t_final,
                                const DynamicsOptions& options,
                                const RecorderOptions& recorder) {
  TrajectoryEngine engine(params, options);
  return engine.run(initial, pulse, t_final, recorder);
}

}  // namespace sshwire
