#include "sshwire.h"

#include <exception>
#include <filesystem>
#include <string>

#include "sshwire/config.hpp"
#include "sshwire/errors.hpp"
#include "sshwire/harness.hpp"

struct sshwire_config_s {
  sshwire::ExperimentConfig config;
  std::string canonical_cache;
  std::string hash_cache;
};

struct sshwire_report_s {
  sshwire::Report report;
};

namespace {

thread_local std::string g_last_error = "";

sshwire_status fail(sshwire_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

template <typename Fn>
sshwire_status guarded(Fn&& fn) {
  try {
    fn();
    return SSHWIRE_OK;
  } catch (const sshwire::config_error& e) {
    return fail(SSHWIRE_ERR_CONFIG, e.what());
  } catch (const sshwire::numerical_error& e) {
    return fail(SSHWIRE_ERR_NUMERIC, e.what());
  } catch (const sshwire::io_error& e) {
    return fail(SSHWIRE_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SSHWIRE_ERR_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SSHWIRE_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SSHWIRE_ERR_NUMERIC, e.what());
  }
}

}  // namespace

extern "C" {

const char* sshwire_version(void) { return "1.0.0"; }

const char* sshwire_last_error(void) { return g_last_error.c_str(); }

sshwire_status sshwire_config_parse(const char* text, sshwire_config** out) {
  if (!text || !out) return fail(SSHWIRE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sshwire_config_s;
    try {
      handle->config = sshwire::ExperimentConfig::parse(text);
      handle->config.validate();
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

sshwire_status sshwire_config_load(const char* path, sshwire_config** out) {
  if (!path || !out) return fail(SSHWIRE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sshwire_config_s;
    try {
      handle->config = sshwire::ExperimentConfig::load(path);
      handle->config.validate();
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

sshwire_status sshwire_config_set(sshwire_config* config, const char* key,
                                  const char* value) {
  if (!config || !key || !value)
    return fail(SSHWIRE_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    config->config.set(key, value);
    config->config.validate();
  });
}

const char* sshwire_config_canonical(sshwire_config* config) {
  if (!config) return nullptr;
  config->canonical_cache = config->config.canonical();
  return config->canonical_cache.c_str();
}

const char* sshwire_config_hash(sshwire_config* config) {
  if (!config) return nullptr;
  config->hash_cache = config->config.hash_hex();
  return config->hash_cache.c_str();
}

void sshwire_config_free(sshwire_config* config) { delete config; }

sshwire_status sshwire_run_command(const sshwire_config* config,
                                   const char* command,
                                   sshwire_report** out) {
  if (!config || !command || !out)
    return fail(SSHWIRE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sshwire_report_s;
    try {
      handle->report = sshwire::run_command(config->config, command);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

void sshwire_set_progress(int enabled) {
  sshwire::set_progress_reporting(enabled != 0);
}

const char* sshwire_report_json(const sshwire_report* report) {
  return report ? report->report.summary_json.c_str() : nullptr;
}

int sshwire_report_table_count(const sshwire_report* report) {
  return report ? static_cast<int>(report->report.tables.size()) : 0;
}

const char* sshwire_report_table_name(const sshwire_report* report,
                                      int index) {
  if (!report || index < 0 ||
      index >= static_cast<int>(report->report.tables.size()))
    return nullptr;
  return report->report.tables[index].first.c_str();
}

const char* sshwire_report_table_csv(const sshwire_report* report, int index) {
  if (!report || index < 0 ||
      index >= static_cast<int>(report->report.tables.size()))
    return nullptr;
  return report->report.tables[index].second.c_str();
}

sshwire_status sshwire_report_write(const sshwire_report* report,
                                    const char* dir) {
  if (!report || !dir) return fail(SSHWIRE_ERR_ARGUMENT, "null argument");
  return guarded([&] { sshwire::write_report(report->report, dir); });
}

void sshwire_report_free(sshwire_report* report) { delete report; }

}  // extern "C"
