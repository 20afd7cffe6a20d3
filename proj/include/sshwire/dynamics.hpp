#ifndef SSHWIRE_DYNAMICS_HPP
#define SSHWIRE_DYNAMICS_HPP

#include <complex>
#include <functional>

#include "sshwire/laser.hpp"
#include "sshwire/leads.hpp"
#include "sshwire/observables.hpp"
#include "sshwire/params.hpp"
#include "sshwire/rk8.hpp"

namespace sshwire {

// Initially occupied single-particle orbitals on the molecular sites.
// Column j holds <n|eps_j(t)>; every column carries the same occupancy
// (2 for spin-paired electrons).
struct OrbitalSet {
  Eigen::MatrixXcd amplitudes;  // N x n_occupied
  double occupancy = 2.0;
};

struct TrajectoryState {
  LatticeState lattice;
  OrbitalSet orbitals;
  double time = 0.0;
};

// rho_{n,m} = occupancy * sum_j conj(psi_j(n)) psi_j(m).
Eigen::MatrixXcd density_matrix(const OrbitalSet& orbitals);

// Lowest N/2 eigenvectors of the electronic Hamiltonian at the given
// geometry and field value, occupancy 2.
OrbitalSet initial_orbitals(const WireParams& params,
                            const LatticeState& lattice, double field);

// Classical equations for the interior sites; entries at the clamped ends
// stay zero.
void nuclear_derivatives(const WireParams& params, const TrajectoryState& state,
                         const Eigen::MatrixXcd& rho, double field,
                         Eigen::VectorXd& du, Eigen::VectorXd& dp);

// i hbar dpsi/dt = H_S^el psi - i (t_coup^2/t_lead) Gamma psi, column-wise.
Eigen::MatrixXcd orbital_derivatives(const WireParams& params,
                                     const TrajectoryState& state, double field,
                                     const GammaMatrix& gamma);

enum class ProjectorPolicy {
  AboveFermi,  // production: project on dressed states above the Fermi energy
  Identity,    // validation: bare end-site absorbers
};

struct DynamicsOptions {
  double dt = 0.025;            // fs
  double ramp_duration = 10.0;  // fs; <= 0 means coupling always on
  ProjectorPolicy policy = ProjectorPolicy::AboveFermi;
  bool leads_enabled = true;
  double norm_growth_tol = 1e-6;  // per-step column-norm growth rejection
};

struct RecorderOptions {
  double interval = 0.5;  // fs; snapped to a whole number of steps
  int dressed_count = 0;  // instantaneous levels kept around the gap
};

// Single-trajectory propagator. One engine per worker; reusable across runs
// with the same wire.
class TrajectoryEngine {
 public:
  TrajectoryEngine(const WireParams& params, const DynamicsOptions& options);

  // Advances by one fixed RK8 step; field and projector are rebuilt at every
  // stage. Throws numerical_error if an orbital norm grows beyond tolerance.
  void step(TrajectoryState& state, const LaserPulse& pulse);

  TrajectoryRecord run(TrajectoryState state, const LaserPulse& pulse,
                       double t_final, const RecorderOptions& recorder);

  // Currents, dressed levels and norms at the state's current time.
  InstantObservables observe(const TrajectoryState& state,
                             const LaserPulse& pulse) const;

  const DynamicsOptions& options() const { return options_; }

  // Total mean-field energy at zero field: electronic expectation value plus
  // lattice kinetic and elastic terms. Conserved for field-free, lead-free
  // propagation.
  static double trajectory_energy(const WireParams& params,
                                  const TrajectoryState& state);

 private:
  struct Derivative {
    Eigen::VectorXd du, dp;
    Eigen::MatrixXcd dpsi;
  };

  void rhs(double t, const Eigen::VectorXd& u, const Eigen::VectorXd& p,
           const Eigen::MatrixXcd& psi, const LaserPulse& pulse,
           Derivative& out);

  WireParams params_;
  DynamicsOptions options_;
  double occ_ = 2.0;
  mutable ProjectorWorkspace projector_ws_;
  mutable ProjectorAction action_;
  Derivative stages_[Rk8Tableau::kStages];
  Eigen::VectorXd u_stage_, p_stage_, diag_, off_;
  Eigen::MatrixXcd psi_stage_;
  Eigen::VectorXd rho_diag_, rho_off_;
  Eigen::VectorXd prev_norms_;
};

// Convenience wrapper: builds an engine and propagates one trajectory.
TrajectoryRecord run_trajectory(const WireParams& params,
                                const TrajectoryState& initial,
                                const LaserPulse& pulse, double t_final,
                                const DynamicsOptions& options,
                                const RecorderOptions& recorder);

}  // namespace sshwire

#endif
