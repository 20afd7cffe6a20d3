#ifndef SSHWIRE_OBSERVABLES_HPP
#define SSHWIRE_OBSERVABLES_HPP

#include <optional>
#include <vector>

#include "sshwire/leads.hpp"
#include "sshwire/params.hpp"

namespace sshwire {

// Time series of one quantum-classical trajectory on the recorder grid.
struct TrajectoryRecord {
  Eigen::VectorXd times;    // fs
  Eigen::VectorXd field;    // E(t), V/A
  Eigen::VectorXd j_left;   // current into the left lead (|e|/fs)
  Eigen::VectorXd j_right;
  Eigen::VectorXd q_left;   // running trapezoidal integral of j (|e|)
  Eigen::VectorXd q_right;
  Eigen::MatrixXd dressed_levels;  // samples x k, empty when k = 0
  double initial_trace = 0.0;      // Tr rho(0)
  double final_norm = 0.0;         // Tr rho(t_final)
};

// Snapshot quantities produced by the engine at record times.
struct InstantObservables {
  double field = 0.0;
  double j_left = 0.0;
  double j_right = 0.0;
  double trace = 0.0;
  Eigen::VectorXd energies;  // full dressed spectrum, ascending (may be empty
                             // when the projector policy does not need it)
};

// Current deposited into lead beta,
//   j = (2 |e| / hbar) g s Re{ p_beta^T rho p_beta },  p_beta = P e_{n_beta}.
// Reported positive when electrons flow into the lead.
double lead_current(const Eigen::MatrixXcd& rho, const Projector& proj,
                    LeadId beta, double e_charge, double coupling_strength,
                    double switch_value);

// Appends one sample to the running trapezoidal charge integrals.
void accumulate_charge(TrajectoryRecord& record, double j_left, double j_right,
                       double dt_grid);

// eta = (q_L - q_R) / (q_L + q_R); empty when the denominator is below
// 1e-6 |e|.
std::optional<double> efficiency(double q_left, double q_right);

inline constexpr double kEfficiencyThreshold = 1e-6;

// Ascending instantaneous eigenvalues of a (symmetric) electronic
// Hamiltonian.
Eigen::VectorXd dressed_spectrum(const Eigen::MatrixXd& h_el);

// Indices (0-based, ascending-spectrum order) of the k levels closest to the
// gap, used when recording dressed levels.
std::vector<int> gap_window_indices(int n_sites, int count);

}  // namespace sshwire

#endif
