#include "sshwire/lattice.hpp"

#include <cmath>
#include <deque>
#include <random>

#include "sshwire/errors.hpp"
#include "sshwire/rng.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

void WireParams::validate() const {
  if (n_sites < 4 || n_sites % 2 != 0)
    throw config_error("n_sites must be even and >= 4");
  if (t0 <= 0 || k_spring <= 0 || mass <= 0 || lattice_const <= 0 ||
      lead_hopping <= 0 || coupling_strength <= 0)
    throw config_error(
        "t0, k_spring, mass, lattice_const, lead_hopping and "
        "coupling_strength must be strictly positive");
}

WireParams make_rigid(const WireParams& params) {
  WireParams rigid = params;
  rigid.mass = params.mass * 1e6;
  return rigid;
}

double NormalModes::zero_point_energy() const {
  return 0.5 * kHbar * frequencies.sum();
}

void electronic_tridiagonal(const WireParams& params, const Eigen::VectorXd& u,
                            double field, Eigen::VectorXd& diag,
                            Eigen::VectorXd& off) {
  const int n = params.n_sites;
  if (u.size() != n) throw config_error("displacement vector size mismatch");
  diag.resize(n);
  off.resize(n - 1);
  for (int i = 0; i < n; ++i)
    diag[i] = params.e_charge * site_position(params, i + 1, u[i]) * field;
  for (int i = 0; i < n - 1; ++i)
    off[i] = -params.t0 + params.alpha * (u[i + 1] - u[i]);
}

Eigen::MatrixXd build_electronic_hamiltonian(const WireParams& params,
                                             const LatticeState& state,
                                             double field) {
  const int n = params.n_sites;
  if (state.u.size() != n || state.p.size() != n)
    throw config_error("lattice state size mismatch");
  Eigen::VectorXd diag, off;
  electronic_tridiagonal(params, state.u, field, diag, off);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.diagonal() = diag;
  for (int i = 0; i < n - 1; ++i) h(i, i + 1) = h(i + 1, i) = off[i];
  return h;
}

namespace {

// Ground-state bond orders rho_{n,n+1} = 2 sum_occ phi(n) phi(n+1) at E = 0.
Eigen::VectorXd ground_bond_orders(const WireParams& params,
                                   const Eigen::VectorXd& u, double* e_el) {
  const int n = params.n_sites;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int i = 0; i < n - 1; ++i)
    off[i] = -params.t0 + params.alpha * (u[i + 1] - u[i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off);
  const auto& vecs = es.eigenvectors();
  const auto& vals = es.eigenvalues();
  if (e_el) *e_el = 2.0 * vals.head(n / 2).sum();
  Eigen::VectorXd bond = Eigen::VectorXd::Zero(n - 1);
  for (int k = 0; k < n / 2; ++k)
    bond += 2.0 * vecs.col(k).head(n - 1).cwiseProduct(vecs.col(k).tail(n - 1));
  return bond;
}

double elastic_energy(const WireParams& params, const Eigen::VectorXd& u) {
  const int n = params.n_sites;
  double e = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    const double d = u[i + 1] - u[i];
    e += d * d;
  }
  return 0.5 * params.k_spring * e;
}

}  // namespace

double total_ground_energy(const WireParams& params,
                           const Eigen::VectorXd& u) {
  if (u.size() != params.n_sites)
    throw config_error("displacement vector size mismatch");
  double e_el = 0.0;
  ground_bond_orders(params, u, &e_el);
  return e_el + elastic_energy(params, u);
}

Eigen::VectorXd ground_energy_gradient(const WireParams& params,
                                       const Eigen::VectorXd& u) {
  const int n = params.n_sites;
  if (u.size() != n) throw config_error("displacement vector size mismatch");
  const Eigen::VectorXd bond = ground_bond_orders(params, u, nullptr);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (int i = 1; i < n - 1; ++i) {
    g[i] = params.k_spring * (2.0 * u[i] - u[i + 1] - u[i - 1]) +
           params.alpha * (bond[i - 1] - bond[i]);
  }
  return g;
}

namespace {

// Limited-memory BFGS with Armijo backtracking over the free displacements.
class LbfgsMinimizer {
 public:
  LbfgsMinimizer(const WireParams& params, int history)
      : params_(params), history_(history), n_free_(params.n_sites - 2) {}

  double value(const Eigen::VectorXd& x) {
    return total_ground_energy(params_, embed(x));
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) {
    return ground_energy_gradient(params_, embed(x)).segment(1, n_free_);
  }

  Eigen::VectorXd embed(const Eigen::VectorXd& x) const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(params_.n_sites);
    u.segment(1, n_free_) = x;
    return u;
  }

  // Two-loop recursion for the search direction -H g.
  Eigen::VectorXd direction(const Eigen::VectorXd& g) const {
    Eigen::VectorXd q = g;
    std::vector<double> a(s_.size());
    for (int i = static_cast<int>(s_.size()) - 1; i >= 0; --i) {
      a[i] = rho_[i] * s_[i].dot(q);
      q -= a[i] * y_[i];
    }
    if (!s_.empty()) {
      const double gamma =
          s_.back().dot(y_.back()) / y_.back().squaredNorm();
      q *= gamma;
    }
    for (std::size_t i = 0; i < s_.size(); ++i) {
      const double b = rho_[i] * y_[i].dot(q);
      q += (a[i] - b) * s_[i];
    }
    return -q;
  }

  void push(const Eigen::VectorXd& s, const Eigen::VectorXd& y) {
    const double sy = s.dot(y);
    if (sy <= 1e-14) {  // curvature too small; drop the pair
      return;
    }
    s_.push_back(s);
    y_.push_back(y);
    rho_.push_back(1.0 / sy);
    if (static_cast<int>(s_.size()) > history_) {
      s_.pop_front();
      y_.pop_front();
      rho_.pop_front();
    }
  }

  void reset() {
    s_.clear();
    y_.clear();
    rho_.clear();
  }

 private:
  const WireParams& params_;
  int history_;
  int n_free_;
  std::deque<Eigen::VectorXd> s_, y_;
  std::deque<double> rho_;
};

}  // namespace

LatticeState optimize_geometry(const WireParams& params,
                               const OptimizeOptions& opts) {
  params.validate();
  const int n = params.n_sites;
  const int n_free = n - 2;
  LbfgsMinimizer mini(params, 12);

  Eigen::VectorXd x(n_free);
  for (int i = 0; i < n_free; ++i)
    x[i] = (i % 2 == 0 ? -1.0 : 1.0) * opts.seed_amplitude;

  double f = mini.value(x);
  Eigen::VectorXd g = mini.gradient(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tol) {
      LatticeState out = LatticeState::zero(n);
      out.u = mini.embed(x);
      return out;
    }
    Eigen::VectorXd d = mini.direction(g);
    double slope = g.dot(d);
    if (slope >= 0.0) {  // not a descent direction; restart from steepest
      mini.reset();
      d = -g;
      slope = g.dot(d);
    }
    double step = 1.0;
    double f_new = 0.0;
    Eigen::VectorXd x_new;
    bool ok = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * d;
      f_new = mini.value(x_new);
      if (f_new <= f + 1e-4 * step * slope) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok)
      throw numerical_error("geometry optimizer: line search failed");
    Eigen::VectorXd g_new = mini.gradient(x_new);
    mini.push(x_new - x, g_new - g);
    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
  }
  throw numerical_error("geometry optimizer: no convergence after " +
                        std::to_string(opts.max_iterations) + " iterations");
}

NormalModes normal_mode_analysis(const WireParams& params,
                                 const LatticeState& ground) {
  params.validate();
  const int n = params.n_sites;
  const int n_free = n - 2;
  const double h = 1e-4;  // displacement step (A)

  Eigen::MatrixXd hess(n_free, n_free);
  Eigen::VectorXd up = ground.u, um = ground.u;
  for (int i = 0; i < n_free; ++i) {
    up[i + 1] += h;
    um[i + 1] -= h;
    const Eigen::VectorXd gp = ground_energy_gradient(params, up);
    const Eigen::VectorXd gm = ground_energy_gradient(params, um);
    hess.col(i) = (gp - gm).segment(1, n_free) / (2.0 * h);
    up[i + 1] = ground.u[i + 1];
    um[i + 1] = ground.u[i + 1];
  }
  hess = 0.5 * (hess + hess.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess / params.mass);
  const Eigen::VectorXd lam = es.eigenvalues();
  if (lam.minCoeff() < -1e-8)
    throw numerical_error(
        "normal modes: negative Hessian eigenvalue; geometry is not a "
        "minimum");

  NormalModes modes;
  modes.frequencies = lam.cwiseMax(0.0).cwiseSqrt();
  modes.modeshapes = es.eigenvectors();
  modes.ground_geometry = ground.u;
  return modes;
}

LatticeState sample_wigner(const WireParams& params, const NormalModes& modes,
                           std::uint64_t seed) {
  const int n = params.n_sites;
  const int n_free = n - 2;
  if (modes.frequencies.size() != n_free)
    throw config_error("normal modes do not match wire size");

  auto engine = make_engine(seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  // T = 0 Wigner distribution is a product of Gaussians per mode, so direct
  // sampling is exact.
  Eigen::VectorXd q(n_free), pk(n_free);
  for (int k = 0; k < n_free; ++k) {
    const double w = modes.frequencies[k];
    const double sigma_q = std::sqrt(kHbar / (2.0 * params.mass * w));
    const double sigma_p = std::sqrt(kHbar * params.mass * w / 2.0);
    q[k] = sigma_q * unit(engine);
    pk[k] = sigma_p * unit(engine);
  }

  LatticeState out = LatticeState::zero(n);
  out.u = modes.ground_geometry;
  out.u.segment(1, n_free) += modes.modeshapes * q;
  out.p.segment(1, n_free) = modes.modeshapes * pk;
  out.u[0] = out.u[n - 1] = 0.0;
  out.p[0] = out.p[n - 1] = 0.0;
  return out;
}

}  // namespace sshwire
