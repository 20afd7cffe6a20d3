#ifndef SSHWIRE_ENSEMBLE_HPP
#define SSHWIRE_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sshwire/dynamics.hpp"
#include "sshwire/laser.hpp"
#include "sshwire/observables.hpp"
#include "sshwire/params.hpp"

namespace sshwire {

struct EnsembleConfig {
  int n_traj = 1;
  std::uint64_t base_seed = 1;
  WireParams wire;
  LaserPulse pulse;
  double t_final = 100.0;       // fs
  double dt = 0.025;            // fs
  double record_interval = 0.5; // fs
  bool rigid = false;           // single frozen trajectory, mass x 1e6
  double ramp_duration = 10.0;  // lead coupling turn-on (fs)
  int dressed_count = 0;
  int threads = 0;              // 0 = hardware concurrency
};

struct SeriesStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stderr_;  // standard deviation / sqrt(n)
};

struct EnsembleSummary {
  int n_traj = 0;
  Eigen::VectorXd times;
  Eigen::VectorXd field;
  SeriesStats j_left, j_right, q_left, q_right;
  Eigen::MatrixXd dressed_mean;  // samples x k

  // final-time scalars with standard errors over trajectories
  double q_left_final = 0, q_left_final_se = 0;
  double q_right_final = 0, q_right_final_se = 0;
  double q_diff = 0, q_diff_se = 0;  // q_L - q_R
  double q_sum = 0, q_sum_se = 0;    // q_L + q_R
  std::optional<double> eta;         // from ensemble-mean charges
  double eta_se = 0;                 // delta-method propagation

  double mean_initial_trace = 0;  // Tr rho(0)
  double mean_final_norm = 0;     // Tr rho(t_final)
};

// Per-time-point standard error over trajectories; requires n >= 2.
Eigen::VectorXd sampling_error(const std::vector<Eigen::VectorXd>& series);

using ProgressFn = std::function<void(int done, int total)>;

// Runs the seeded trajectory ensemble. Trajectory i derives its RNG stream
// from (base_seed, i); the reduction is performed in trajectory order, so
// the summary does not depend on the worker count. A trajectory failure
// aborts the ensemble with the failing seed in the message.
EnsembleSummary run_ensemble(const EnsembleConfig& config,
                             const ProgressFn& progress = nullptr);

}  // namespace sshwire

#endif
