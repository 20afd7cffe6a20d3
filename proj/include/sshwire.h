/* sshwire: laser-driven electron transport in vibrating SSH molecular wires
 * coupled to absorbing metallic leads.
 *
 * C API over the C++ core. All objects are opaque handles; every call that
 * can fail returns an sshwire_status, with a human-readable message
 * available from sshwire_last_error() (thread-local).
 */
#ifndef SSHWIRE_H
#define SSHWIRE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SSHWIRE_OK = 0,
  SSHWIRE_ERR_ARGUMENT = 1, /* bad call arguments (null handle, ...) */
  SSHWIRE_ERR_CONFIG = 2,   /* malformed or invalid configuration */
  SSHWIRE_ERR_NUMERIC = 3,  /* propagation or solver failure */
  SSHWIRE_ERR_IO = 4        /* file system failure */
} sshwire_status;

typedef struct sshwire_config_s sshwire_config;
typedef struct sshwire_report_s sshwire_report;

const char* sshwire_version(void);

/* Message for the last failing call on this thread; never NULL. */
const char* sshwire_last_error(void);

/* --- configuration ----------------------------------------------------- */

/* Parses the sectioned key=value format ([wire], [pulse], [ensemble],
 * [sweep], [output], [oracle]). Unknown keys are rejected. */
sshwire_status sshwire_config_parse(const char* text, sshwire_config** out);
sshwire_status sshwire_config_load(const char* path, sshwire_config** out);

/* Applies one "section.key" override, e.g. ("ensemble.base_seed", "42"). */
sshwire_status sshwire_config_set(sshwire_config* config, const char* key,
                                  const char* value);

/* Canonical resolved text and its FNV-1a hash. The returned pointer is owned
 * by the config and valid until the next call on the same handle. */
const char* sshwire_config_canonical(sshwire_config* config);
const char* sshwire_config_hash(sshwire_config* config);

void sshwire_config_free(sshwire_config* config);

/* --- commands ----------------------------------------------------------- */

/* command is one of: "optimize", "run", "sweep", "validate-leads". */
sshwire_status sshwire_run_command(const sshwire_config* config,
                                   const char* command, sshwire_report** out);

/* Ensemble progress lines on stderr (off by default). */
void sshwire_set_progress(int enabled);

/* --- reports ------------------------------------------------------------ */

/* JSON summary text of the report. */
const char* sshwire_report_json(const sshwire_report* report);

int sshwire_report_table_count(const sshwire_report* report);
const char* sshwire_report_table_name(const sshwire_report* report, int index);
const char* sshwire_report_table_csv(const sshwire_report* report, int index);

/* Writes summary.json plus one <name>.csv per table into dir. */
sshwire_status sshwire_report_write(const sshwire_report* report,
                                    const char* dir);

void sshwire_report_free(sshwire_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SSHWIRE_H */
