#include "sshwire/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "sshwire/errors.hpp"
#include "sshwire/lattice.hpp"
#include "sshwire/rng.hpp"

namespace sshwire {

Eigen::VectorXd sampling_error(const std::vector<Eigen::VectorXd>& series) {
  const int n = static_cast<int>(series.size());
  if (n < 2) throw config_error("sampling_error requires at least 2 series");
  const Eigen::Index len = series[0].size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(len);
  for (const auto& s : series) mean += s;
  mean /= n;
  Eigen::VectorXd var = Eigen::VectorXd::Zero(len);
  for (const auto& s : series) var += (s - mean).cwiseAbs2();
  var /= (n - 1);
  return (var / n).cwiseSqrt();
}

namespace {

SeriesStats reduce_series(const std::vector<Eigen::VectorXd>& series) {
  const int n = static_cast<int>(series.size());
  const Eigen::Index len = series[0].size();
  SeriesStats out;
  out.mean = Eigen::VectorXd::Zero(len);
  for (const auto& s : series) out.mean += s;
  out.mean /= n;
  if (n >= 2) {
    out.stderr_ = sampling_error(series);
  } else {
    out.stderr_ = Eigen::VectorXd::Zero(len);
  }
  return out;
}

struct ScalarStats {
  double mean = 0, se = 0;
};

ScalarStats reduce_scalar(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  ScalarStats out;
  for (double v : x) out.mean += v;
  out.mean /= n;
  if (n >= 2) {
    double var = 0;
    for (double v : x) var += (v - out.mean) * (v - out.mean);
    var /= (n - 1);
    out.se = std::sqrt(var / n);
  }
  return out;
}

}  // namespace

EnsembleSummary run_ensemble(const EnsembleConfig& config,
                             const ProgressFn& progress) {
  config.wire.validate();
  config.pulse.validate();
  if (config.n_traj < 1) throw config_error("n_traj must be >= 1");
  if (config.dt <= 0 || config.t_final <= 0)
    throw config_error("dt and t_final must be positive");

  // A rigid chain is the single frozen trajectory at the optimal geometry.
  const int n_traj = config.rigid ? 1 : config.n_traj;
  const WireParams wire =
      config.rigid ? make_rigid(config.wire) : config.wire;

  const LatticeState ground = optimize_geometry(config.wire);
  NormalModes modes;
  if (!config.rigid) modes = normal_mode_analysis(config.wire, ground);

  DynamicsOptions dyn;
  dyn.dt = config.dt;
  dyn.ramp_duration = config.ramp_duration;
  RecorderOptions rec;
  rec.interval = config.record_interval;
  rec.dressed_count = config.dressed_count;

  std::vector<TrajectoryRecord> records(n_traj);
  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::mutex failure_mutex;
  std::string failure;

  auto worker = [&]() {
    TrajectoryEngine engine(wire, dyn);
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_traj) return;
      const std::uint64_t seed = trajectory_seed(config.base_seed, i);
      try {
        TrajectoryState state;
        state.lattice = config.rigid ? LatticeState{ground.u, ground.p}
                                     : sample_wigner(config.wire, modes, seed);
        state.orbitals = initial_orbitals(
            wire, state.lattice, field_value(config.pulse, 0.0));
        state.time = 0.0;
        records[i] =
            engine.run(std::move(state), config.pulse, config.t_final, rec);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure.empty())
          failure = "trajectory " + std::to_string(i) + " (seed " +
                    std::to_string(seed) + "): " + e.what();
        next.store(n_traj);  // stop remaining workers
        return;
      }
      const int d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        progress(d, n_traj);
      }
    }
  };

  int n_threads = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, n_traj));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!failure.empty()) throw numerical_error("ensemble aborted: " + failure);

  // index-ordered reduction
  EnsembleSummary out;
  out.n_traj = n_traj;
  out.times = records[0].times;
  out.field = records[0].field;

  auto collect = [&](auto getter) {
    std::vector<Eigen::VectorXd> series;
    series.reserve(n_traj);
    for (const auto& r : records) series.push_back(getter(r));
    return series;
  };
  out.j_left = reduce_series(collect([](const TrajectoryRecord& r) { return r.j_left; }));
  out.j_right = reduce_series(collect([](const TrajectoryRecord& r) { return r.j_right; }));
  out.q_left = reduce_series(collect([](const TrajectoryRecord& r) { return r.q_left; }));
  out.q_right = reduce_series(collect([](const TrajectoryRecord& r) { return r.q_right; }));

  if (records[0].dressed_levels.size() > 0) {
    out.dressed_mean = Eigen::MatrixXd::Zero(records[0].dressed_levels.rows(),
                                             records[0].dressed_levels.cols());
    for (const auto& r : records) out.dressed_mean += r.dressed_levels;
    out.dressed_mean /= n_traj;
  }

  std::vector<double> ql(n_traj), qr(n_traj), qd(n_traj), qs(n_traj),
      tr0(n_traj), trf(n_traj);
  for (int i = 0; i < n_traj; ++i) {
    ql[i] = records[i].q_left[records[i].q_left.size() - 1];
    qr[i] = records[i].q_right[records[i].q_right.size() - 1];
    qd[i] = ql[i] - qr[i];
    qs[i] = ql[i] + qr[i];
    tr0[i] = records[i].initial_trace;
    trf[i] = records[i].final_norm;
  }
  const ScalarStats sl = reduce_scalar(ql), sr = reduce_scalar(qr),
                    sd = reduce_scalar(qd), ss = reduce_scalar(qs);
  out.q_left_final = sl.mean;
  out.q_left_final_se = sl.se;
  out.q_right_final = sr.mean;
  out.q_right_final_se = sr.se;
  out.q_diff = sd.mean;
  out.q_diff_se = sd.se;
  out.q_sum = ss.mean;
  out.q_sum_se = ss.se;
  out.mean_initial_trace = reduce_scalar(tr0).mean;
  out.mean_final_norm = reduce_scalar(trf).mean;

  out.eta = efficiency(sl.mean, sr.mean);
  if (out.eta && ss.mean > 0) {
    // eta = d/s: var(eta) ~ (d/s)^2 [var(d)/d^2 + var(s)/s^2 - 2 cov/(d s)]
    // computed directly from per-trajectory (d, s) pairs
    double cov = 0;
    if (n_traj >= 2) {
      for (int i = 0; i < n_traj; ++i)
        cov += (qd[i] - sd.mean) * (qs[i] - ss.mean);
      cov /= (n_traj - 1);
      cov /= n_traj;  // covariance of the means
      const double d = sd.mean, s = ss.mean;
      const double var = (sd.se * sd.se) / (s * s) +
                         (d * d / (s * s * s * s)) * (ss.se * ss.se) -
                         2.0 * d / (s * s * s) * cov;
      out.eta_se = var > 0 ? std::sqrt(var) : 0.0;
    }
  }
  return out;
}

}  // namespace sshwire
