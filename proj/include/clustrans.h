/* clustrans — separability-preserving transitions between clusterings.
 *
 * C interface of the shared library. All functions return ct_status; the
 * values mirror the CLI exit codes. Objects are opaque handles created and
 * destroyed here; strings returned through `char **` are owned by the
 * library and released with ct_string_free(). On failure, ct_last_error()
 * returns a message for the current thread.
 */

#ifndef CLUSTRANS_H
#define CLUSTRANS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ct_status {
  CT_OK = 0,
  CT_VERIFICATION_FAILED = 1,
  CT_ERROR_INPUT = 2,
  CT_ERROR_INTERNAL = 3
} ct_status;

typedef struct ct_config ct_config;
typedef struct ct_instance ct_instance;
typedef struct ct_transition ct_transition;

const char* ct_version(void);
const char* ct_last_error(void);
void ct_string_free(char* s);

/* ---- configuration ---- */
ct_config* ct_config_new(void);
void ct_config_free(ct_config* cfg);
ct_status ct_config_load_file(ct_config* cfg, const char* path);
ct_status ct_config_set_tol_feas(ct_config* cfg, double tol);
ct_status ct_config_set_tol_opt(ct_config* cfg, double tol);
ct_status ct_config_set_pivot_rule(ct_config* cfg, const char* rule); /* "dantzig" | "bland" */
ct_status ct_config_set_enum_budget(ct_config* cfg, uint64_t budget);
ct_status ct_config_set_seed(ct_config* cfg, uint64_t seed);

/* ---- instances ---- */
ct_status ct_instance_parse(const char* text, ct_instance** out);
ct_status ct_instance_load_file(const char* path, ct_instance** out);
void ct_instance_free(ct_instance* inst);
/* 1 when the points span a proper subspace of their ambient dimension. */
int ct_instance_rank_deficient(const ct_instance* inst);

/* ---- computations ----
 * Text results are documents in the library's canonical formats. */

/* Best clustering of the given shape for the instance's sites; shape lists
 * one size per cluster. Returns the instance annotated with the result. */
ct_status ct_lsa(const ct_instance* inst, const ct_config* cfg, const int* shape, size_t shape_len,
                 char** out_text);

/* Best clustering over all shapes within the instance bounds (all shapes
 * when no bounds are given). */
ct_status ct_radial(const ct_instance* inst, const ct_config* cfg, char** out_text);

/* Full walk from the instance's initial clustering/sites to its target. */
ct_status ct_transit(const ct_instance* inst, const ct_config* cfg, ct_transition** out);

/* Exhaustive cross-check of the solver on a small instance. Writes a JSON
 * report; *agree is 1 when enumeration and solver objectives match. */
ct_status ct_oracle_check(const ct_instance* inst, const ct_config* cfg, char** out_report,
                          int* agree);

/* ---- transitions ---- */
ct_status ct_transition_parse(const char* text, ct_transition** out);
ct_status ct_transition_load_file(const char* path, ct_transition** out);
ct_status ct_transition_to_text(const ct_transition* tr, char** out_text);
void ct_transition_free(ct_transition* tr);
size_t ct_transition_length(const ct_transition* tr); /* number of clusterings */

/* Re-runs every walk property; *all_passed is 1 when everything holds.
 * The report is a JSON document either way. */
ct_status ct_verify(const ct_transition* tr, const ct_config* cfg, char** out_report,
                    int* all_passed);

/* SVG drawing of one clustering of the walk with its separating diagram
 * (2-D data only). */
ct_status ct_render_svg(const ct_transition* tr, int step, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* CLUSTRANS_H */
