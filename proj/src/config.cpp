#include "sshwire/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "sshwire/errors.hpp"

namespace sshwire {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw config_error("invalid number for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw config_error("invalid integer for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (...) {
    throw config_error("invalid seed for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("invalid boolean for " + key + ": '" + v + "'");
}

std::string kind_name(PulseKind k) {
  switch (k) {
    case PulseKind::Off: return "off";
    case PulseKind::Gaussian: return "gaussian";
    case PulseKind::Plateau: return "plateau";
  }
  return "off";
}

PulseKind parse_kind(const std::string& v) {
  if (v == "off") return PulseKind::Off;
  if (v == "gaussian") return PulseKind::Gaussian;
  if (v == "plateau") return PulseKind::Plateau;
  throw config_error("invalid pulse kind: '" + v + "'");
}

}  // namespace

void ExperimentConfig::set(const std::string& dotted_key,
                           const std::string& raw_value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw config_error("expected section.key, got '" + dotted_key + "'");
  const std::string section = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  const std::string value = trim(raw_value);
  const std::string full = section + "." + key;

  if (section == "wire") {
    if (key == "n_sites") wire.n_sites = parse_int(full, value);
    else if (key == "t0") wire.t0 = parse_double(full, value);
    else if (key == "alpha") wire.alpha = parse_double(full, value);
    else if (key == "k_spring") wire.k_spring = parse_double(full, value);
    else if (key == "mass") wire.mass = parse_double(full, value);
    else if (key == "lattice_const") wire.lattice_const = parse_double(full, value);
    else if (key == "e_charge") wire.e_charge = parse_double(full, value);
    else if (key == "lead_hopping") wire.lead_hopping = parse_double(full, value);
    else if (key == "coupling_strength") wire.coupling_strength = parse_double(full, value);
    else if (key == "fermi_energy") wire.fermi_energy = parse_double(full, value);
    else throw config_error("unknown key: " + full);
  } else if (section == "pulse") {
    if (key == "preset") pulse = preset(value);
    else if (key == "kind") pulse.kind = parse_kind(value);
    else if (key == "eps_w") pulse.eps_w = parse_double(full, value);
    else if (key == "eps_2w") pulse.eps_2w = parse_double(full, value);
    else if (key == "omega") pulse.omega = parse_double(full, value);
    else if (key == "phi_w") pulse.phi_w = parse_double(full, value);
    else if (key == "phi_2w") pulse.phi_2w = parse_double(full, value);
    else if (key == "t_center") pulse.t_center = parse_double(full, value);
    else if (key == "t_width") pulse.t_width = parse_double(full, value);
    else if (key == "t_on") pulse.t_on = parse_double(full, value);
    else if (key == "t_off") pulse.t_off = parse_double(full, value);
    else if (key == "t_ramp") pulse.t_ramp = parse_double(full, value);
    else throw config_error("unknown key: " + full);
  } else if (section == "ensemble") {
    if (key == "n_traj") run.n_traj = parse_int(full, value);
    else if (key == "base_seed") run.base_seed = parse_u64(full, value);
    else if (key == "t_final") run.t_final = parse_double(full, value);
    else if (key == "dt") run.dt = parse_double(full, value);
    else if (key == "record_interval") run.record_interval = parse_double(full, value);
    else if (key == "rigid") run.rigid = parse_bool(full, value);
    else if (key == "ramp_duration") run.ramp_duration = parse_double(full, value);
    else if (key == "threads") run.threads = parse_int(full, value);
    else throw config_error("unknown key: " + full);
  } else if (section == "sweep") {
    if (key == "variable") {
      if (value != "none" && value != "omega" && value != "relative_phase")
        throw config_error("invalid sweep variable: '" + value + "'");
      sweep.variable = value;
    } else if (key == "start") sweep.start = parse_double(full, value);
    else if (key == "stop") sweep.stop = parse_double(full, value);
    else if (key == "step") sweep.step = parse_double(full, value);
    else throw config_error("unknown key: " + full);
  } else if (section == "output") {
    if (key == "dir") output.dir = value;
    else if (key == "dressed_levels") output.dressed_levels = parse_int(full, value);
    else if (key == "timeseries") output.timeseries = parse_bool(full, value);
    else if (key == "per_point_timeseries") output.per_point_timeseries = parse_bool(full, value);
    else throw config_error("unknown key: " + full);
  } else if (section == "oracle") {
    if (key == "n_lead_sites") oracle.n_lead_sites = parse_int(full, value);
    else if (key == "t_final") oracle.t_final = parse_double(full, value);
    else if (key == "dt") oracle.dt = parse_double(full, value);
    else if (key == "record_interval") oracle.record_interval = parse_double(full, value);
    else throw config_error("unknown key: " + full);
  } else {
    throw config_error("unknown section: [" + section + "]");
  }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  // Within [pulse], a preset must be applied before explicit keys regardless
  // of file order, so pulse assignments are collected first.
  std::string pulse_preset;
  std::vector<std::pair<std::string, std::string>> pulse_keys;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(line_no) +
                           ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(line_no) +
                         ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw config_error("line " + std::to_string(line_no) +
                         ": key outside of any section");
    if (section == "pulse") {
      if (key == "preset") pulse_preset = value;
      else pulse_keys.emplace_back(key, value);
      // validate the key name early
      if (key != "preset") {
        ExperimentConfig probe;
        probe.set("pulse." + key, value);
      }
    } else {
      cfg.set(section + "." + key, value);
    }
  }
  if (!pulse_preset.empty()) cfg.pulse = preset(pulse_preset);
  for (const auto& [key, value] : pulse_keys) cfg.set("pulse." + key, value);
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream out;
  out << "[wire]\n";
  out << "n_sites = " << wire.n_sites << "\n";
  out << "t0 = " << format_double(wire.t0) << "\n";
  out << "alpha = " << format_double(wire.alpha) << "\n";
  out << "k_spring = " << format_double(wire.k_spring) << "\n";
  out << "mass = " << format_double(wire.mass) << "\n";
  out << "lattice_const = " << format_double(wire.lattice_const) << "\n";
  out << "e_charge = " << format_double(wire.e_charge) << "\n";
  out << "lead_hopping = " << format_double(wire.lead_hopping) << "\n";
  out << "coupling_strength = " << format_double(wire.coupling_strength) << "\n";
  out << "fermi_energy = " << format_double(wire.fermi_energy) << "\n";
  out << "\n[pulse]\n";
  out << "kind = " << kind_name(pulse.kind) << "\n";
  out << "eps_w = " << format_double(pulse.eps_w) << "\n";
  out << "eps_2w = " << format_double(pulse.eps_2w) << "\n";
  out << "omega = " << format_double(pulse.omega) << "\n";
  out << "phi_w = " << format_double(pulse.phi_w) << "\n";
  out << "phi_2w = " << format_double(pulse.phi_2w) << "\n";
  out << "t_center = " << format_double(pulse.t_center) << "\n";
  out << "t_width = " << format_double(pulse.t_width) << "\n";
  out << "t_on = " << format_double(pulse.t_on) << "\n";
  out << "t_off = " << format_double(pulse.t_off) << "\n";
  out << "t_ramp = " << format_double(pulse.t_ramp) << "\n";
  out << "\n[ensemble]\n";
  out << "n_traj = " << run.n_traj << "\n";
  out << "base_seed = " << run.base_seed << "\n";
  out << "t_final = " << format_double(run.t_final) << "\n";
  out << "dt = " << format_double(run.dt) << "\n";
  out << "record_interval = " << format_double(run.record_interval) << "\n";
  out << "rigid = " << (run.rigid ? "true" : "false") << "\n";
  out << "ramp_duration = " << format_double(run.ramp_duration) << "\n";
  out << "threads = " << run.threads << "\n";
  out << "\n[sweep]\n";
  out << "variable = " << sweep.variable << "\n";
  out << "start = " << format_double(sweep.start) << "\n";
  out << "stop = " << format_double(sweep.stop) << "\n";
  out << "step = " << format_double(sweep.step) << "\n";
  out << "\n[output]\n";
  out << "dir = " << output.dir << "\n";
  out << "dressed_levels = " << output.dressed_levels << "\n";
  out << "timeseries = " << (output.timeseries ? "true" : "false") << "\n";
  out << "per_point_timeseries = "
      << (output.per_point_timeseries ? "true" : "false") << "\n";
  out << "\n[oracle]\n";
  out << "n_lead_sites = " << oracle.n_lead_sites << "\n";
  out << "t_final = " << format_double(oracle.t_final) << "\n";
  out << "dt = " << format_double(oracle.dt) << "\n";
  out << "record_interval = " << format_double(oracle.record_interval) << "\n";
  return out.str();
}

std::string ExperimentConfig::hash_hex() const {
  const std::string text = canonical();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

void ExperimentConfig::validate() const {
  wire.validate();
  pulse.validate();
  if (run.n_traj < 1) throw config_error("ensemble.n_traj must be >= 1");
  if (run.dt <= 0) throw config_error("ensemble.dt must be positive");
  if (run.t_final <= 0) throw config_error("ensemble.t_final must be positive");
  if (run.record_interval < run.dt)
    throw config_error("ensemble.record_interval must be >= dt");
  if (sweep.variable != "none") {
    if (sweep.step <= 0) throw config_error("sweep.step must be positive");
    if (sweep.stop < sweep.start)
      throw config_error("sweep.stop must be >= sweep.start");
  }
  if (oracle.n_lead_sites < 4)
    throw config_error("oracle.n_lead_sites must be >= 4");
}

}  // namespace sshwire
