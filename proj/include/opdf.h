#ifndef OPDF_H
#define OPDF_H

/*
 * C interface to the opdf toolkit: positivity certificates, Naimark
 * dilations, small-group factorization criteria and representation
 * structure on finite groups.
 *
 * Every call goes through opdf_run: a command name, a spec document (JSON
 * text) and an options document (JSON text, may be NULL or empty). The
 * result is an opaque report handle carrying a JSON report and a verdict
 * string; the status code classifies failures and doubles as the CLI exit
 * code. A report handle is returned even on failure (carrying the error)
 * unless allocation itself failed; free it with opdf_report_free.
 *
 * Reports are deterministic for a fixed (command, spec, options) triple.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum opdf_status {
  OPDF_OK = 0,
  OPDF_ERROR_INTERNAL = 1,
  OPDF_ERROR_PARSE = 2,
  OPDF_ERROR_VALIDATION = 3,
  OPDF_ERROR_CONSISTENCY = 4
} opdf_status;

typedef struct opdf_report opdf_report;

/* Library version string. */
const char* opdf_version(void);

/* Space-separated list of supported command names. */
const char* opdf_commands(void);

/*
 * Runs a command. `spec_json` may be NULL or empty for commands that take
 * no payload (counterexample-det). `options_json` accepts
 * {"n": int, "level": int, "strict": bool, "seed": int, "tol": number}.
 * On return *out is a report handle (or NULL on allocation failure).
 */
opdf_status opdf_run(const char* command, const char* spec_json, const char* options_json,
                     opdf_report** out);

/* NUL-terminated JSON report; owned by the handle. */
const char* opdf_report_json(const opdf_report* report);

/* Verdict string ("positive", "compatible", "error", ...). */
const char* opdf_report_verdict(const opdf_report* report);

/* The status the run finished with. */
opdf_status opdf_report_status(const opdf_report* report);

void opdf_report_free(opdf_report* report);

#ifdef __cplusplus
}
#endif

#endif /* OPDF_H */
