#include "sshwire/harness.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sshwire/dynamics.hpp"
#include "sshwire/ensemble.hpp"
#include "sshwire/errors.hpp"
#include "sshwire/lattice.hpp"
#include "sshwire/oracle.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

namespace {

using json = nlohmann::ordered_json;

std::atomic<bool> g_progress{false};

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_header(const ExperimentConfig& config) {
  return "# config_hash=" + config.hash_hex() +
         " base_seed=" + std::to_string(config.run.base_seed) + "\n";
}

json base_summary(const ExperimentConfig& config, const std::string& command) {
  json j;
  j["command"] = command;
  j["config_hash"] = config.hash_hex();
  j["base_seed"] = config.run.base_seed;
  return j;
}

EnsembleConfig make_ensemble_config(const ExperimentConfig& config) {
  EnsembleConfig ec;
  ec.n_traj = config.run.n_traj;
  ec.base_seed = config.run.base_seed;
  ec.wire = config.wire;
  ec.pulse = config.pulse;
  ec.t_final = config.run.t_final;
  ec.dt = config.run.dt;
  ec.record_interval = config.run.record_interval;
  ec.rigid = config.run.rigid;
  ec.ramp_duration = config.run.ramp_duration;
  ec.dressed_count = config.output.dressed_levels;
  ec.threads = config.run.threads;
  return ec;
}

ProgressFn make_progress(const std::string& label) {
  if (!g_progress.load()) return nullptr;
  return [label](int done, int total) {
    if (done == total || done % 10 == 0)
      std::cerr << "\r" << label << ": " << done << "/" << total
                << (done == total ? " done\n" : "") << std::flush;
  };
}

std::string timeseries_csv(const ExperimentConfig& config,
                           const EnsembleSummary& s) {
  std::ostringstream out;
  out << csv_header(config);
  out << "t,E,jL,jR,qL,qR";
  for (int k = 0; k < s.dressed_mean.cols(); ++k) out << ",eps_" << (k + 1);
  out << ",jL_se,jR_se,qL_se,qR_se\n";
  for (Eigen::Index i = 0; i < s.times.size(); ++i) {
    out << csv_number(s.times[i]) << "," << csv_number(s.field[i]) << ","
        << csv_number(s.j_left.mean[i]) << "," << csv_number(s.j_right.mean[i])
        << "," << csv_number(s.q_left.mean[i]) << ","
        << csv_number(s.q_right.mean[i]);
    for (int k = 0; k < s.dressed_mean.cols(); ++k)
      out << "," << csv_number(s.dressed_mean(i, k));
    out << "," << csv_number(s.j_left.stderr_[i]) << ","
        << csv_number(s.j_right.stderr_[i]) << ","
        << csv_number(s.q_left.stderr_[i]) << ","
        << csv_number(s.q_right.stderr_[i]) << "\n";
  }
  return out.str();
}

json ensemble_scalars(const EnsembleSummary& s) {
  json j;
  j["n_traj"] = s.n_traj;
  j["q_left"] = s.q_left_final;
  j["q_left_se"] = s.q_left_final_se;
  j["q_right"] = s.q_right_final;
  j["q_right_se"] = s.q_right_final_se;
  j["q_diff"] = s.q_diff;
  j["q_diff_se"] = s.q_diff_se;
  j["q_sum"] = s.q_sum;
  j["q_sum_se"] = s.q_sum_se;
  j["eta_defined"] = s.eta.has_value();
  if (s.eta)
    j["eta"] = *s.eta;
  else
    j["eta"] = nullptr;
  j["eta_se"] = s.eta_se;
  const double absorbed = s.mean_initial_trace - s.mean_final_norm;
  j["bookkeeping"] = {{"initial_trace", s.mean_initial_trace},
                      {"final_norm", s.mean_final_norm},
                      {"absorbed", absorbed},
                      {"q_sum_minus_absorbed", s.q_sum - absorbed}};
  return j;
}

double optimized_gap(const WireParams& wire, const LatticeState& ground) {
  const Eigen::MatrixXd h = build_electronic_hamiltonian(wire, ground, 0.0);
  const Eigen::VectorXd w = dressed_spectrum(h);
  return w[wire.n_sites / 2] - w[wire.n_sites / 2 - 1];
}

struct SineFit {
  double amplitude = 0, phase = 0, offset = 0, r_squared = 0;
};

// Least-squares y ~ A sin(v) + B cos(v) + C.
SineFit fit_sinusoid(const std::vector<double>& v,
                     const std::vector<double>& y) {
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd m(n, 3);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    m(i, 0) = std::sin(v[i]);
    m(i, 1) = std::cos(v[i]);
    m(i, 2) = 1.0;
    rhs[i] = y[i];
  }
  const Eigen::Vector3d c =
      m.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd res = rhs - m * c;
  const double mean = rhs.mean();
  const double ss_tot = (rhs.array() - mean).square().sum();
  SineFit fit;
  fit.amplitude = std::hypot(c[0], c[1]);
  fit.phase = std::atan2(c[1], c[0]);
  fit.offset = c[2];
  fit.r_squared = ss_tot > 0 ? 1.0 - res.squaredNorm() / ss_tot : 1.0;
  return fit;
}

}  // namespace

void set_progress_reporting(bool enabled) { g_progress.store(enabled); }
bool progress_reporting() { return g_progress.load(); }

Report cmd_optimize(const ExperimentConfig& config) {
  config.validate();
  const LatticeState ground = optimize_geometry(config.wire);
  const NormalModes modes = normal_mode_analysis(config.wire, ground);
  const double gap = optimized_gap(config.wire, ground);
  const Eigen::VectorXd grad = ground_energy_gradient(config.wire, ground.u);

  json j = base_summary(config, "optimize");
  j["n_sites"] = config.wire.n_sites;
  j["gap"] = gap;
  j["gradient_max"] = grad.lpNorm<Eigen::Infinity>();
  j["energy"] = total_ground_energy(config.wire, ground.u);
  j["zero_point_energy"] = modes.zero_point_energy();
  j["u_star"] = std::vector<double>(ground.u.data(),
                                    ground.u.data() + ground.u.size());
  j["frequencies"] = std::vector<double>(
      modes.frequencies.data(),
      modes.frequencies.data() + modes.frequencies.size());
  Report report;
  report.summary_json = j.dump(2) + "\n";
  return report;
}

Report cmd_run(const ExperimentConfig& config) {
  config.validate();
  const EnsembleConfig ec = make_ensemble_config(config);
  const EnsembleSummary s = run_ensemble(ec, make_progress("run"));

  json j = base_summary(config, "run");
  j["rigid"] = config.run.rigid;
  j["t_final"] = config.run.t_final;
  j["dt"] = config.run.dt;
  j.update(ensemble_scalars(s));

  Report report;
  report.summary_json = j.dump(2) + "\n";
  if (config.output.timeseries)
    report.tables.emplace_back("timeseries", timeseries_csv(config, s));
  return report;
}

Report cmd_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.sweep.variable == "none")
    throw config_error("sweep requires sweep.variable = omega|relative_phase");

  std::vector<double> values;
  for (double v = config.sweep.start;
       v <= config.sweep.stop + 0.5 * config.sweep.step;
       v += config.sweep.step)
    values.push_back(v);

  json points = json::array();
  std::ostringstream csv;
  csv << csv_header(config);
  csv << "value,q_diff,q_diff_se,eta,eta_se,q_sum,q_sum_se,qL,qR,status\n";

  std::vector<double> fit_v, fit_y;
  Report report;
  std::vector<std::pair<std::string, std::string>> point_tables;

  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig point = config;
    if (config.sweep.variable == "omega") {
      point.pulse.omega = values[i];
    } else {  // relative_phase: phi_2w - 2 phi_w
      point.pulse.phi_2w = 2.0 * point.pulse.phi_w + values[i];
    }
    json entry;
    entry["value"] = values[i];
    try {
      const EnsembleConfig ec = make_ensemble_config(point);
      const EnsembleSummary s = run_ensemble(
          ec, make_progress("sweep " + std::to_string(i + 1) + "/" +
                            std::to_string(values.size())));
      entry.update(ensemble_scalars(s));
      entry["status"] = "ok";
      csv << csv_number(values[i]) << "," << csv_number(s.q_diff) << ","
          << csv_number(s.q_diff_se) << ","
          << csv_number(s.eta ? *s.eta : std::nan("")) << ","
          << csv_number(s.eta_se) << "," << csv_number(s.q_sum) << ","
          << csv_number(s.q_sum_se) << "," << csv_number(s.q_left_final)
          << "," << csv_number(s.q_right_final) << ",ok\n";
      fit_v.push_back(values[i]);
      fit_y.push_back(s.q_diff);
      if (config.output.per_point_timeseries) {
        char name[32];
        std::snprintf(name, sizeof(name), "sweep_point_%03zu", i);
        point_tables.emplace_back(name, timeseries_csv(point, s));
      }
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
      csv << csv_number(values[i]) << ",nan,nan,nan,nan,nan,nan,nan,nan,failed\n";
    }
    points.push_back(entry);
  }

  json j = base_summary(config, "sweep");
  j["variable"] = config.sweep.variable;
  j["points"] = points;
  if (config.sweep.variable == "relative_phase" && fit_v.size() >= 4) {
    const SineFit fit = fit_sinusoid(fit_v, fit_y);
    j["sinusoid_fit"] = {{"amplitude", fit.amplitude},
                         {"phase", fit.phase},
                         {"offset", fit.offset},
                         {"r_squared", fit.r_squared}};
  }
  report.summary_json = j.dump(2) + "\n";
  report.tables.emplace_back("sweep", csv.str());
  for (auto& t : point_tables) report.tables.push_back(std::move(t));
  return report;
}

Report cmd_validate_leads(const ExperimentConfig& config) {
  config.validate();
  const WireParams& wire = config.wire;
  const LatticeState flat = LatticeState::zero(wire.n_sites);

  // one initially excited orbital: the highest state of the bare chain
  Eigen::VectorXd diag, off;
  electronic_tridiagonal(wire, flat.u, field_value(config.pulse, 0.0), diag,
                         off);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off);
  Eigen::MatrixXcd orbitals0 =
      es.eigenvectors().rightCols(1).cast<std::complex<double>>();

  LeadOracleConfig oc;
  oc.n_lead_sites = config.oracle.n_lead_sites;
  oc.t_final = config.oracle.t_final;
  oc.dt_record = config.oracle.record_interval;
  oc.dt_markov = config.oracle.dt;
  oc.dt_volterra = config.oracle.dt;
  const LeadOracleResult res =
      finite_lead_oracle(wire, flat, orbitals0, config.pulse, oc);

  // kernel checks: K(0) and the asymptotic integral hbar / t_lead
  const double k0 = memory_kernel(0.0, wire.lead_hopping);
  double integral = 0, abserr = 0;
  {
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4096);
    const double t_lead = wire.lead_hopping;
    gsl_function f;
    auto kernel_fn = [](double t, void* p) {
      return memory_kernel(t, *static_cast<double*>(p));
    };
    f.function = kernel_fn;
    f.params = const_cast<double*>(&t_lead);
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    gsl_integration_qag(&f, 0.0, 200.0 * kHbar / t_lead, 0.0, 1e-8, 4096,
                        GSL_INTEG_GAUSS61, ws, &integral, &abserr);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
  }
  const double expected = kHbar / wire.lead_hopping;

  double nonmark_dev = 0.0;
  for (Eigen::Index i = 0; i < res.times.size(); ++i) {
    if (res.times[i] < res.window_start) continue;
    nonmark_dev = std::max(
        nonmark_dev, std::abs(res.norm_nonmarkovian[i] - res.norm_exact[i]) /
                         res.norm_exact[i]);
  }

  json j = base_summary(config, "validate-leads");
  j["n_sites"] = wire.n_sites;
  j["n_lead_sites"] = config.oracle.n_lead_sites;
  j["t_lead"] = wire.lead_hopping;
  j["coupling_strength"] = wire.coupling_strength;
  j["window"] = {res.window_start, res.times[res.times.size() - 1]};
  j["max_rel_deviation"] = res.max_rel_deviation;
  j["threshold"] = 0.05;
  j["pass"] = res.max_rel_deviation <= 0.05;
  j["nonmarkovian_max_rel_deviation"] = nonmark_dev;
  j["kernel"] = {{"k0", k0},
                 {"integral", integral},
                 {"integral_expected", expected},
                 {"integral_rel_err", (integral - expected) / expected}};

  std::ostringstream csv;
  csv << csv_header(config);
  csv << "t,norm_exact,norm_markovian,norm_nonmarkovian,jL,jR\n";
  for (Eigen::Index i = 0; i < res.times.size(); ++i) {
    csv << csv_number(res.times[i]) << "," << csv_number(res.norm_exact[i])
        << "," << csv_number(res.norm_markovian[i]) << ","
        << csv_number(res.norm_nonmarkovian[i]) << ","
        << csv_number(res.j_left_exact[i]) << ","
        << csv_number(res.j_right_exact[i]) << "\n";
  }

  Report report;
  report.summary_json = j.dump(2) + "\n";
  report.tables.emplace_back("leadcheck", csv.str());
  return report;
}

Report run_command(const ExperimentConfig& config, const std::string& name) {
  if (name == "optimize") return cmd_optimize(config);
  if (name == "run") return cmd_run(config);
  if (name == "sweep") return cmd_sweep(config);
  if (name == "validate-leads") return cmd_validate_leads(config);
  throw config_error("unknown command: " + name);
}

void write_report(const Report& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory: " + dir);
  auto write = [&](const std::string& name, const std::string& text) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << text;
  };
  write("summary.json", report.summary_json);
  for (const auto& [name, csv] : report.tables) write(name + ".csv", csv);
}

}  // namespace sshwire
