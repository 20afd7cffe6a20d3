#include "sshwire/leads.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <stdexcept>

#include "sshwire/errors.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

double memory_kernel(double t, double t_lead) {
  if (t < 0) throw std::invalid_argument("memory_kernel: t must be >= 0");
  const double z = 2.0 * t_lead * t / kHbar;
  if (z < 1e-8) return 1.0 - z * z / 8.0;  // small-argument limit of 2 J1(z)/z
  return 2.0 * gsl_sf_bessel_J1(z) / z;
}

std::complex<double> lead_propagator_element(int n, int m, LeadId beta,
                                             double t, double t_lead,
                                             int n_sites) {
  const int n_beta = (beta == LeadId::Left) ? 1 : n_sites;
  if (beta == LeadId::Left) {
    if (n > 0 || m > 0)
      throw std::invalid_argument("left-lead sites must satisfy n <= 0");
  } else {
    if (n < n_sites + 1 || m < n_sites + 1)
      throw std::invalid_argument("right-lead sites must satisfy n >= N+1");
  }
  const double z = 2.0 * t_lead * t / kHbar;
  auto ipow = [](int k) {
    static const std::complex<double> table[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
  };
  const int d = n - m;
  const int s = n + m - 2 * n_beta;
  return ipow(d) * gsl_sf_bessel_Jn(d, z) - ipow(s) * gsl_sf_bessel_Jn(s, z);
}

Projector build_projector(const Eigen::MatrixXd& h_el, double fermi_energy) {
  const Eigen::Index n = h_el.rows();
  if (h_el.cols() != n || (h_el - h_el.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("build_projector: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_el);
  const Eigen::VectorXd& vals = es.eigenvalues();
  Eigen::Index first = n;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (vals[k] - fermi_energy > kFermiDegeneracyTol) {
      first = k;
      break;
    }
  }
  const Eigen::Index count = n - first;
  Projector proj;
  proj.eigen_energies = vals;
  proj.n_selected = static_cast<int>(count);
  const auto sel = es.eigenvectors().rightCols(count);
  proj.matrix.noalias() = sel * sel.transpose();
  return proj;
}

GammaMatrix build_gamma(const Projector& proj, double switch_value) {
  const Eigen::Index n = proj.matrix.rows();
  const Eigen::VectorXd p1 = proj.matrix.col(0);
  const Eigen::VectorXd pn = proj.matrix.col(n - 1);
  GammaMatrix gamma;
  gamma.switch_value = switch_value;
  gamma.matrix.noalias() = switch_value * (p1 * p1.transpose());
  gamma.matrix.noalias() += switch_value * (pn * pn.transpose());
  return gamma;
}

double coupling_switch(double t, double ramp_duration) {
  if (ramp_duration <= 0.0) return 1.0;
  if (t <= 0.0) return 0.0;
  if (t >= ramp_duration) return 1.0;
  const double s = std::sin(M_PI * t / (2.0 * ramp_duration));
  return s * s;
}

void ProjectorWorkspace::compute(const Eigen::VectorXd& diag,
                                 const Eigen::VectorXd& off,
                                 double fermi_energy, ProjectorAction& out) {
  const Eigen::Index n = diag.size();
  solver_.computeFromTridiagonal(diag, off);
  out.energies = solver_.eigenvalues();
  Eigen::Index first = n;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (out.energies[k] - fermi_energy > kFermiDegeneracyTol) {
      first = k;
      break;
    }
  }
  const Eigen::Index count = n - first;
  out.n_selected = static_cast<int>(count);
  const auto sel = solver_.eigenvectors().rightCols(count);
  out.v_left.noalias() = sel * sel.row(0).transpose();
  out.v_right.noalias() = sel * sel.row(n - 1).transpose();
}

}  // namespace sshwire
