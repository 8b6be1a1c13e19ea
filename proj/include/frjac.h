/* C interface to the frozen Jacobian algebra checker.
 *
 * Sessions are opaque; every query returns a JSON report (caller frees it
 * with frjac_free). Verdicts, including pipeline errors, live inside the
 * report; status codes signal API misuse and I/O problems only. Sessions are
 * not thread-safe; distinct sessions may be used from distinct threads.
 */
#ifndef FRJAC_H
#define FRJAC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FRJAC_OK = 0,
  FRJAC_E_ARGUMENT = 1, /* null pointer or unknown option/command */
  FRJAC_E_IO = 2,       /* file not readable */
  FRJAC_E_NOMEM = 3,
  FRJAC_E_INTERNAL = 4,
} frjac_status;

typedef struct frjac_session frjac_session;

const char* frjac_version(void);

frjac_status frjac_open_buffer(const char* text, size_t len, const char* name, frjac_session** out);
frjac_status frjac_open_file(const char* path, frjac_session** out);
void frjac_close(frjac_session* s);

/* Message for the most recent failing call on this session. */
const char* frjac_last_error(const frjac_session* s);

/* Keys: "field" (Q|Fp), "prime", "gb_cap", "degree_cap", "resolve_cap",
 * "graded" (0|1). */
frjac_status frjac_set_option(frjac_session* s, const char* key, const char* value);

/* Commands: "check", "gb", "basis", "relations", "grade",
 * "resolve:<S|P|I>:<vertex>". The report is heap-allocated JSON. */
frjac_status frjac_run(frjac_session* s, const char* command, char** report_json);

/* Exit code recorded in a report: 0 certified, 1 not quasi-isomorphic,
 * 2 unsupported or error. Returns 2 on unparsable input. */
int frjac_report_exit_code(const char* report_json);

void frjac_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* FRJAC_H */
