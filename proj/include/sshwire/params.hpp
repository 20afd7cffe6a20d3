#ifndef SSHWIRE_PARAMS_HPP
#define SSHWIRE_PARAMS_HPP

#include <Eigen/Dense>

namespace sshwire {

// Physical constants of one wire-plus-leads setup. Defaults are the standard
// trans-polyacetylene SSH parameter set with weakly coupled wide-band leads.
struct WireParams {
  int n_sites = 20;                // N, even
  double t0 = 2.5;                 // hopping at zero displacement (eV)
  double alpha = 4.1;              // electron-ion coupling (eV/A)
  double k_spring = 21.0;          // lattice force constant (eV/A^2)
  double mass = 1349.14;           // (CH) group mass (eV fs^2/A^2)
  double lattice_const = 1.22;     // a (A)
  double e_charge = 1.0;           // |e|; fields are given in V/A
  double lead_hopping = 20.0;      // t_lead (eV)
  double coupling_strength = 0.1;  // t_coup^2/t_lead (eV)
  double fermi_energy = 0.0;       // eps_F (eV)

  // Throws std::invalid_argument if a constraint is violated.
  void validate() const;
};

// Returns a copy with the nuclear mass scaled by 1e6. Rigid runs use a single
// trajectory frozen at the optimal geometry with zero momenta.
WireParams make_rigid(const WireParams& params);

// Nuclear displacements and momenta, clamped at both ends:
// u[0] = u[N-1] = p[0] = p[N-1] = 0 at all times.
struct LatticeState {
  Eigen::VectorXd u;  // displacements (A)
  Eigen::VectorXd p;  // momenta (eV fs/A)

  static LatticeState zero(int n_sites) {
    return {Eigen::VectorXd::Zero(n_sites), Eigen::VectorXd::Zero(n_sites)};
  }
};

// Harmonic analysis of the clamped chain around the optimal geometry.
// Modes live on the N-2 free sites; clamped ends are excluded.
struct NormalModes {
  Eigen::VectorXd frequencies;     // angular frequencies (1/fs), ascending
  Eigen::MatrixXd modeshapes;      // (N-2)x(N-2), orthonormal columns
  Eigen::VectorXd ground_geometry; // u* over all N sites (A)

  double zero_point_energy() const;  // sum hbar*omega/2 (eV)
};

}  // namespace sshwire

#endif
