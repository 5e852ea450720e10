/* C interface to the pkdyn shared library.
 *
 * All computation goes through pkdyn_run_json; the handle API below exposes
 * the map objects directly for embedders that want to keep one around.
 *
 * Error handling: functions return 0 (or a valid pointer) on success and a
 * nonzero code (or NULL) on failure; pkdyn_last_error() describes the most
 * recent failure on the calling thread.
 */
#ifndef PKDYN_H
#define PKDYN_H

#ifdef __cplusplus
extern "C" {
#endif

enum pkdyn_status {
  PKDYN_OK = 0,
  PKDYN_E_INVALID_ARGUMENT = 1,
  PKDYN_E_DIMENSION = 2,
  PKDYN_E_FIELD = 3,
  PKDYN_E_DEGENERATE = 4,
  PKDYN_E_NO_CONVERGENCE = 5,
  PKDYN_E_INDETERMINATE = 6,
  PKDYN_E_INCONCLUSIVE = 7,
  PKDYN_E_BUDGET = 8,
  PKDYN_E_PARSE = 9,
  PKDYN_E_INTERNAL = 10
};

const char* pkdyn_version(void);

/* Dispatch a JSON request ({"op": ..., ...}) and return the JSON response
 * in *response (free with pkdyn_free). */
int pkdyn_run_json(const char* request, char** response);

void pkdyn_free(char* s);

/* Message of the last failure on this thread; empty string if none. */
const char* pkdyn_last_error(void);

/* Opaque map handle. */
typedef struct pkdyn_map pkdyn_map;

/* spec is a JSON map spec: {"builtin": name, ...} or
 * {"ambient": [...], "components": [[...]]}. */
pkdyn_map* pkdyn_map_create(const char* spec);
void pkdyn_map_destroy(pkdyn_map* m);

/* Degree of a single-factor map; negative code on failure. */
int pkdyn_map_degree(const pkdyn_map* m);

/* Degrees of the reduced iterates f^1..f^n into out (length n). */
int pkdyn_map_degree_sequence(const pkdyn_map* m, int n, long* out);

/* Dynamical-degree estimate from an n-term degree sequence. */
int pkdyn_map_delta(const pkdyn_map* m, int n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PKDYN_H */
