#ifndef BNFACETS_H
#define BNFACETS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BnfStatus {
  BNF_STATUS_OK = 0,
  BNF_STATUS_NULL_POINTER = 1,
  BNF_STATUS_INVALID_UTF8 = 2,
  BNF_STATUS_PARSE = 3,
  BNF_STATUS_INVALID_ARGUMENT = 4,
  BNF_STATUS_BUDGET = 5,
  BNF_STATUS_COMPUTATION = 6,
  BNF_STATUS_PANIC = 7,
} BnfStatus;

typedef enum BnfEncoding {
  BNF_ENCODING_FAM = 0,
  BNF_ENCODING_CHAR = 1,
  BNF_ENCODING_STANDARD = 2,
} BnfEncoding;

/**
 * A DAG together with its ground set.
 */
typedef struct BnfDag BnfDag;

typedef struct BnfHrep BnfHrep;

typedef struct BnfReport BnfReport;

typedef struct BnfVrep BnfVrep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *bnf_last_error(void);

/**
 * Library version, static string.
 */
const char *bnf_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void bnf_string_free(char *s);

/**
 * Number of DAGs over `n` nodes, `1 <= n <= 5`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BnfStatus bnf_dag_count(size_t n, size_t *out);

/**
 * Parses `{"a": "", "b": "a"}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum BnfStatus bnf_dag_from_json(const char *json, struct BnfDag **out);

/**
 * # Safety
 * `dag` must be null or a handle from `bnf_dag_from_json`.
 */
void bnf_dag_free(struct BnfDag *dag);

/**
 * JSON object of the chosen encoding.
 *
 * # Safety
 * `dag` must be a live handle and `out` a valid pointer.
 */
enum BnfStatus bnf_dag_encode(const struct BnfDag *dag, enum BnfEncoding encoding, char **out);

/**
 * Generalized cluster inequality over the letters `a..`, as JSON.
 * `mode` is 0 for family variables, 1 for characteristic imsets.
 *
 * # Safety
 * `cluster` must be a nul-terminated string and `out` a valid pointer.
 */
enum BnfStatus bnf_cluster_inequality(size_t n,
                                      const char *cluster,
                                      size_t k,
                                      int mode,
                                      char **out);

/**
 * Vertex list from JSON `{"dim": d, "points": [["0", "1/2"], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum BnfStatus bnf_vrep_from_json(const char *json, struct BnfVrep **out);

/**
 * DAG-codes (`space` 0) or characteristic imsets (`space` 1) over `n` nodes.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BnfStatus bnf_vrep_dag_points(size_t n, int space, struct BnfVrep **out);

/**
 * Number of distinct points.
 *
 * # Safety
 * `vrep` must be a live handle.
 */
size_t bnf_vrep_len(const struct BnfVrep *vrep);

/**
 * # Safety
 * `vrep` must be null or a handle from this library.
 */
void bnf_vrep_free(struct BnfVrep *vrep);

/**
 * Facets of the convex hull; `seconds <= 0` means no time limit.
 *
 * # Safety
 * `vrep` must be a live handle and `out` a valid pointer.
 */
enum BnfStatus bnf_hull(const struct BnfVrep *vrep, double seconds, struct BnfHrep **out);

/**
 * # Safety
 * `hrep` must be a live handle.
 */
size_t bnf_hrep_facet_count(const struct BnfHrep *hrep);

/**
 * # Safety
 * `hrep` must be a live handle.
 */
size_t bnf_hrep_equation_count(const struct BnfHrep *hrep);

/**
 * # Safety
 * `hrep` must be a live handle and `out` a valid pointer.
 */
enum BnfStatus bnf_hrep_to_json(const struct BnfHrep *hrep, char **out);

/**
 * # Safety
 * `hrep` must be null or a handle from this library.
 */
void bnf_hrep_free(struct BnfHrep *hrep);

/**
 * Runs a verification pipeline (`n3`, `n4`, `theorem3`, `counterexample`,
 * `conjecture`). A failed check is not an error: inspect the report.
 *
 * # Safety
 * `pipeline` must be a nul-terminated string and `out` a valid pointer.
 */
enum BnfStatus bnf_verify(const char *pipeline,
                          bool stretch,
                          double seconds,
                          struct BnfReport **out);

/**
 * # Safety
 * `report` must be a live handle.
 */
bool bnf_report_passed(const struct BnfReport *report);

/**
 * # Safety
 * `report` must be a live handle.
 */
size_t bnf_report_check_count(const struct BnfReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum BnfStatus bnf_report_to_json(const struct BnfReport *report, char **out);

/**
 * # Safety
 * `report` must be null or a handle from this library.
 */
void bnf_report_free(struct BnfReport *report);

/**
 * Runs the command line with `argv[0..argc]` (program name excluded).
 * Standard output is returned in `out`; the process exit code in
 * `exit_code`.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings; `out` and
 * `exit_code` must be valid pointers.
 */
enum BnfStatus bnf_cli_run(const char *const *argv, size_t argc, char **out, int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BNFACETS_H */
