#ifndef SSHWIRE_ORACLE_HPP
#define SSHWIRE_ORACLE_HPP

#include <complex>

#include "sshwire/laser.hpp"
#include "sshwire/params.hpp"

namespace sshwire {

// Validation of the wide-bandwidth absorbing-lead model against the exact
// composite propagation that it approximates. Production dynamics never
// goes through this path.
struct LeadOracleConfig {
  int n_lead_sites = 400;   // Omega, per lead
  double t_final = 0.0;     // fs; <= 0 picks 0.9 * Omega hbar / (2 t_lead)
  double dt_record = 0.02;  // output grid (fs)
  double dt_markov = 0.002; // step of the absorbing-model integrator (fs)
  double dt_volterra = 0.002;  // step of the memory-kernel integrator (fs)
  bool include_nonmarkovian = true;
};

struct LeadOracleResult {
  Eigen::VectorXd times;
  Eigen::VectorXd norm_exact;        // molecular-subspace norm, composite run
  Eigen::VectorXd norm_markovian;    // end-site absorbers, P = identity
  Eigen::VectorXd norm_nonmarkovian; // memory-kernel convolution, P = identity
  Eigen::VectorXd j_left_exact;      // bond flux into each lead (1/fs,
  Eigen::VectorXd j_right_exact;     //  single orbital, unit occupancy)
  double window_start = 0.0;         // 10 hbar / t_lead
  double max_rel_deviation = 0.0;    // markovian vs exact over the window
};

// Propagates `orbitals0` (columns on the N molecular sites) on the full
// (Omega + N + Omega)-site chain with plain single-site contact couplings,
// static lattice, and no projector; the laser acts on molecular sites only.
// Companion runs solve the reduced molecular dynamics with P = identity and
// no coupling ramp. Throws config_error when Omega is too small for t_final
// (reflections would re-enter: requires t_final < Omega hbar / (2 t_lead)).
LeadOracleResult finite_lead_oracle(const WireParams& params,
                                    const LatticeState& lattice,
                                    const Eigen::MatrixXcd& orbitals0,
                                    const LaserPulse& pulse,
                                    const LeadOracleConfig& config);

}  // namespace sshwire

#endif
