#include "sshwire/observables.hpp"

#include <algorithm>
#include <cmath>

#include "sshwire/errors.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

double lead_current(const Eigen::MatrixXcd& rho, const Projector& proj,
                    LeadId beta, double e_charge, double coupling_strength,
                    double switch_value) {
  const Eigen::Index n = rho.rows();
  const Eigen::VectorXd p_beta =
      proj.matrix.col(beta == LeadId::Left ? 0 : n - 1);
  const std::complex<double> quad =
      p_beta.cast<std::complex<double>>().transpose() * rho *
      p_beta.cast<std::complex<double>>();
  return (2.0 * e_charge / kHbar) * coupling_strength * switch_value *
         quad.real();
}

void accumulate_charge(TrajectoryRecord& record, double j_left, double j_right,
                       double dt_grid) {
  const Eigen::Index k = record.j_left.size();
  double q_l = 0.0, q_r = 0.0;
  if (k > 0) {
    q_l = record.q_left[k - 1] +
          0.5 * dt_grid * (record.j_left[k - 1] + j_left);
    q_r = record.q_right[k - 1] +
          0.5 * dt_grid * (record.j_right[k - 1] + j_right);
  }
  auto push = [](Eigen::VectorXd& v, double value) {
    v.conservativeResize(v.size() + 1);
    v[v.size() - 1] = value;
  };
  push(record.j_left, j_left);
  push(record.j_right, j_right);
  push(record.q_left, q_l);
  push(record.q_right, q_r);
}

std::optional<double> efficiency(double q_left, double q_right) {
  const double total = q_left + q_right;
  if (total < kEfficiencyThreshold) return std::nullopt;
  return (q_left - q_right) / total;
}

Eigen::VectorXd dressed_spectrum(const Eigen::MatrixXd& h_el) {
  if ((h_el - h_el.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("dressed_spectrum: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_el,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<int> gap_window_indices(int n_sites, int count) {
  count = std::clamp(count, 0, n_sites);
  const int start = std::clamp(n_sites / 2 - count / 2, 0, n_sites - count);
  std::vector<int> idx(count);
  for (int i = 0; i < count; ++i) idx[i] = start + i;
  return idx;
}

}  // namespace sshwire
