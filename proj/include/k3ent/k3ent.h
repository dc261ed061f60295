#ifndef K3ENT_H
#define K3ENT_H

/* C interface to the k3ent library. Integers cross the boundary as decimal
 * strings so that arbitrarily large values are accepted. Every entry point
 * returns a status; on failure k3e_last_error() describes the problem (the
 * message is thread-local and valid until the next call on that thread). */

#include <stddef.h>

#if defined(K3ENT_BUILDING)
#define K3E_API __attribute__((visibility("default")))
#else
#define K3E_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum k3e_status {
  K3E_OK = 0,
  K3E_INVALID_INPUT = 2,
  K3E_INVARIANT_VIOLATION = 3,
  K3E_INTERNAL_ERROR = 4
} k3e_status;

typedef struct k3e_options k3e_options;
typedef struct k3e_report k3e_report;

K3E_API const char* k3e_version(void);
K3E_API int k3e_schema_version(void);
K3E_API const char* k3e_last_error(void);

K3E_API k3e_options* k3e_options_new(void);
K3E_API void k3e_options_free(k3e_options* opts);
/* key=value lines: sieve_moduli, sieve_disc_bound, scan_budget, max_t, max_rank */
K3E_API k3e_status k3e_options_load_config(k3e_options* opts, const char* path);
K3E_API k3e_status k3e_options_set(k3e_options* opts, const char* key, const char* value);
K3E_API k3e_status k3e_options_set_workers(k3e_options* opts, unsigned workers);

K3E_API k3e_status k3e_k3_walls(const k3e_options* opts, const char* h2, const char* v, k3e_report** out);
/* v may be NULL */
K3E_API k3e_status k3e_entropy(const k3e_options* opts, const char* d, const char* v, k3e_report** out);
K3E_API k3e_status k3e_cubic(const k3e_options* opts, const char* d, k3e_report** out);
K3E_API k3e_status k3e_cubic_scan(const k3e_options* opts, const char* max_d, k3e_report** out);
/* coefficients A..F of A x^2 + B xy + C y^2 + D x + E y + F = 0 */
K3E_API k3e_status k3e_solve_quadratic(const k3e_options* opts, const char* const coefficients[6], k3e_report** out);

/* Called in deterministic order for each positive finding as it becomes
 * available. `finding_json` is a compact JSON object. */
typedef void (*k3e_finding_callback)(const char* finding_json, const char* finding_text, void* user);
/* targets: comma-separated even v^2 values */
K3E_API k3e_status k3e_scan(const k3e_options* opts, const char* h2_lo, const char* h2_hi, const char* targets,
                            k3e_finding_callback callback, void* user, k3e_report** out);

K3E_API k3e_status k3e_verify(const k3e_options* opts, const char* report_json, k3e_report** out);

K3E_API const char* k3e_report_json(const k3e_report* report);
K3E_API const char* k3e_report_text(const k3e_report* report);
/* 1 for a positive verdict (or a passing verification), 0 otherwise */
K3E_API int k3e_report_positive(const k3e_report* report);
K3E_API void k3e_report_free(k3e_report* report);

#ifdef __cplusplus
}
#endif

#endif
