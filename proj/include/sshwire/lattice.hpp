#ifndef SSHWIRE_LATTICE_HPP
#define SSHWIRE_LATTICE_HPP

#include <cstdint>

#include "sshwire/params.hpp"

namespace sshwire {

// Site position entering the dipole coupling, for 1-based site index n.
// The origin sits at the chain midpoint, which keeps the dipole operator
// traceless for u = 0; the Fermi level at 0 then bisects the dressed
// spectrum at any field amplitude.
inline double site_position(const WireParams& params, int n, double u_n) {
  return (n - 0.5 * (params.n_sites + 1)) * params.lattice_const + u_n;
}

// Tridiagonal representation of the electronic Hamiltonian:
// diag[n] = |e| x_n E, off[n] = -t0 + alpha (u[n+1]-u[n]) for bond (n, n+1).
void electronic_tridiagonal(const WireParams& params, const Eigen::VectorXd& u,
                            double field, Eigen::VectorXd& diag,
                            Eigen::VectorXd& off);

// Dense N x N electronic Hamiltonian (real symmetric).
Eigen::MatrixXd build_electronic_hamiltonian(const WireParams& params,
                                             const LatticeState& state,
                                             double field);

// Ground-state energy at zero field: twice the sum of the lowest N/2
// single-particle levels plus the elastic energy (K/2) sum (u[n+1]-u[n])^2.
double total_ground_energy(const WireParams& params, const Eigen::VectorXd& u);

// Analytic gradient of total_ground_energy with respect to u. Entries at the
// clamped ends are zero.
Eigen::VectorXd ground_energy_gradient(const WireParams& params,
                                       const Eigen::VectorXd& u);

struct OptimizeOptions {
  double seed_amplitude = 0.03;  // staggered starting displacement (A)
  double gradient_tol = 1e-8;    // max-norm convergence threshold (eV/A)
  int max_iterations = 20000;
};

// Minimizes total_ground_energy over the free displacements, starting from a
// staggered seed. Returns the optimal geometry with zero momenta. Throws
// numerical_error on non-convergence.
LatticeState optimize_geometry(const WireParams& params,
                               const OptimizeOptions& opts = {});

// Mass-weighted harmonic analysis around a converged optimum. The Hessian is
// built by central finite differences of the analytic gradient (step 1e-4 A).
// Throws numerical_error if an eigenvalue signals a non-minimum.
NormalModes normal_mode_analysis(const WireParams& params,
                                 const LatticeState& ground);

// Draws one lattice initial condition from the ground-state (T = 0) Wigner
// distribution: per mode, Q ~ N(0, hbar/(2 M w)) and P ~ N(0, hbar M w / 2),
// independent. Clamping is re-imposed exactly.
LatticeState sample_wigner(const WireParams& params, const NormalModes& modes,
                           std::uint64_t seed);

}  // namespace sshwire

#endif
