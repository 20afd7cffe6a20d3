#ifndef SSHWIRE_HARNESS_HPP
#define SSHWIRE_HARNESS_HPP

#include <string>
#include <utility>
#include <vector>

#include "sshwire/config.hpp"

namespace sshwire {

// Products of one command: a JSON summary plus named CSV tables. Output is
// fully deterministic (no timestamps); every file embeds the config hash and
// base seed.
struct Report {
  std::string summary_json;
  std::vector<std::pair<std::string, std::string>> tables;  // name, csv text
};

Report cmd_optimize(const ExperimentConfig& config);
Report cmd_run(const ExperimentConfig& config);
Report cmd_sweep(const ExperimentConfig& config);
Report cmd_validate_leads(const ExperimentConfig& config);

// Dispatch by name: optimize | run | sweep | validate-leads.
Report run_command(const ExperimentConfig& config, const std::string& name);

// Writes summary.json and <table>.csv files into dir (created if needed).
void write_report(const Report& report, const std::string& dir);

// Ensemble progress lines on stderr (off by default).
void set_progress_reporting(bool enabled);
bool progress_reporting();

}  // namespace sshwire

#endif
