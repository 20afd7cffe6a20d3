#ifndef SSHWIRE_LEADS_HPP
#define SSHWIRE_LEADS_HPP

#include <complex>

#include "sshwire/params.hpp"

namespace sshwire {

enum class LeadId { Left, Right };

// Eigenvalues within this distance of the Fermi energy are excluded from the
// projector (conservative blockade at exact gap closure).
inline constexpr double kFermiDegeneracyTol = 1e-9;

// Boundary-site autocorrelation of the isolated-lead propagator,
// K(t) = 2 J_1(2 t_lead t / hbar) / (2 t_lead t / hbar), with K(0) = 1.
double memory_kernel(double t, double t_lead);

// Site-basis matrix element U^beta_{n,m}(t) of the semi-infinite lead
// propagator. Site labels follow the composite-chain convention: the left
// lead occupies n <= 0, the right lead n >= N+1; the contact sites are
// n_L = 1 and n_R = N.
std::complex<double> lead_propagator_element(int n, int m, LeadId beta,
                                             double t, double t_lead,
                                             int n_sites);

// Projection onto the instantaneous light-dressed eigenorbitals above the
// Fermi energy.
struct Projector {
  Eigen::MatrixXd matrix;          // P^S, N x N
  Eigen::VectorXd eigen_energies;  // instantaneous eigenvalues, ascending
  int n_selected = 0;              // trace of P
};

// Diagonalizes h_el (must be symmetric to 1e-9) and assembles the projector
// onto all states strictly above fermi_energy. When the spectrum splits
// N/2 / N/2 about the Fermi level this selects exactly the upper half.
Projector build_projector(const Eigen::MatrixXd& h_el, double fermi_energy);

// Absorbing matrix of the wide-bandwidth limit,
// Gamma_{n,m} = P_{n,1} P_{1,m} + P_{n,N} P_{N,m}, scaled by the ramp value.
struct GammaMatrix {
  Eigen::MatrixXd matrix;
  double switch_value = 1.0;
};

GammaMatrix build_gamma(const Projector& proj, double switch_value);

// Smooth metal-molecule coupling turn-on: sin^2(pi t / (2 ramp)) rising from
// 0 at t = 0 to 1 at t = ramp_duration, constant afterwards. A ramp of zero
// means always on.
double coupling_switch(double t, double ramp_duration = 10.0);

// What the propagation actually needs from the projector at one instant:
// its action on the two contact sites plus the dressed spectrum.
struct ProjectorAction {
  Eigen::VectorXd v_left;    // P e_1
  Eigen::VectorXd v_right;   // P e_N
  Eigen::VectorXd energies;  // ascending
  int n_selected = 0;
};

// Reusable eigensolver workspace, one per trajectory worker.
class ProjectorWorkspace {
 public:
  void compute(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
               double fermi_energy, ProjectorAction& out);

 private:
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_;
};

}  // namespace sshwire

#endif
