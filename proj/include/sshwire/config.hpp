#ifndef SSHWIRE_CONFIG_HPP
#define SSHWIRE_CONFIG_HPP

#include <cstdint>
#include <string>

#include "sshwire/laser.hpp"
#include "sshwire/params.hpp"

namespace sshwire {

struct RunSpec {
  int n_traj = 200;
  std::uint64_t base_seed = 1;
  double t_final = 100.0;
  double dt = 0.025;
  double record_interval = 0.5;
  bool rigid = false;
  double ramp_duration = 10.0;
  int threads = 0;
};

struct SweepSpec {
  std::string variable = "none";  // none | omega | relative_phase
  double start = 0.0;
  double stop = 0.0;
  double step = 0.05;
};

struct OutputSpec {
  std::string dir = "out";
  int dressed_levels = 0;
  bool timeseries = true;
  bool per_point_timeseries = false;
};

struct OracleSpec {
  int n_lead_sites = 400;
  double t_final = 0.0;  // 0 = auto (90% of the lead reflection time)
  double dt = 0.002;
  double record_interval = 0.02;
};

// Key-value configuration with sections [wire], [pulse], [ensemble],
// [sweep], [output], [oracle]. Unknown sections or keys are rejected.
// In [pulse], `preset = <label>` loads a named pulse first; explicit keys
// then override individual fields. The canonical form is fully resolved
// (fixed section and key order, shortest round-trip number formatting) and
// is the input to the config hash.
struct ExperimentConfig {
  WireParams wire;
  LaserPulse pulse;
  RunSpec run;
  SweepSpec sweep;
  OutputSpec output;
  OracleSpec oracle;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  // Applies "section.key = value"; used for command-line overrides.
  void set(const std::string& dotted_key, const std::string& value);

  std::string canonical() const;
  std::string hash_hex() const;  // FNV-1a 64 of the canonical text

  void validate() const;
};

}  // namespace sshwire

#endif
