#ifndef KBFE_H
#define KBFE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KBFE_API __declspec(dllexport)
#else
#define KBFE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kbfe_status {
  KBFE_OK = 0,
  /* The equation or a decomposition invariant fails; the report says where. */
  KBFE_FAILED = 1,
  KBFE_INVALID_ARGUMENT = 2,
  KBFE_PARSE_ERROR = 3,
  KBFE_SIZING_ERROR = 4,
  KBFE_HYPOTHESIS_ERROR = 5,
  KBFE_BUDGET_EXCEEDED = 6,
  KBFE_INTERNAL_ERROR = 7
} kbfe_status;

typedef struct kbfe_group kbfe_group;
typedef struct kbfe_table kbfe_table;

/*
 * Conventions
 *   - Every char** out parameter receives a NUL-terminated JSON document owned
 *     by the caller; release it with kbfe_string_free. On KBFE_FAILED it holds
 *     the report with its witness, on other errors an error object
 *     {"error", "message", ...}. It is left untouched only when out is NULL.
 *   - kbfe_last_error returns the message of the last non-OK call on the
 *     calling thread, or "" after a successful one.
 *   - Tolerance 0 demands exact agreement on exactly represented data.
 */

KBFE_API const char* kbfe_version(void);
KBFE_API const char* kbfe_last_error(void);
KBFE_API void kbfe_string_free(char* s);

/* Groups: "Z^2 x Z/4 x Z/3", "(Z/4)^2", "Z/9", "0". */
KBFE_API kbfe_status kbfe_group_parse(const char* text, kbfe_group** out);
/* {"group", "rank", "torsion", "order" (null when infinite), "cosets_mod2", "cosets_mod4", "doubling_onto"} */
KBFE_API kbfe_status kbfe_group_describe(const kbfe_group* g, char** out_json);
KBFE_API int kbfe_group_is_finite(const kbfe_group* g);
/* Residues of the element (a JSON coordinate array) modulo X^(modulus), modulus 2 or 4. */
KBFE_API kbfe_status kbfe_group_coset_index(const kbfe_group* g, const char* element_json, int modulus,
                                            char** out_json);
/* *out = 1 when the element lies in the subgroup generated by the JSON array of generators. */
KBFE_API kbfe_status kbfe_subgroup_contains(const kbfe_group* g, const char* generators_json,
                                            const char* element_json, int* out);
KBFE_API void kbfe_group_free(kbfe_group* g);

/* Tables use the schema {"group", "domain", "kind", "values": [[coords, value], ...]}. */
KBFE_API kbfe_status kbfe_table_from_json(const char* json, kbfe_table** out);
KBFE_API kbfe_status kbfe_table_to_json(const kbfe_table* t, char** out_json);
/* Restriction of a box table to a smaller radius. Full-group tables are copied. */
KBFE_API kbfe_status kbfe_table_restrict(const kbfe_table* t, int64_t radius, kbfe_table** out);
KBFE_API size_t kbfe_table_size(const kbfe_table* t);
KBFE_API void kbfe_table_free(kbfe_table* t);

/* Exhaustive checks over the tables' common window. KBFE_FAILED when the identity fails. */
KBFE_API kbfe_status kbfe_check(const kbfe_table* f, const kbfe_table* g, double tol, char** report_json);
KBFE_API kbfe_status kbfe_check_self(const kbfe_table* f, double tol, char** report_json);
KBFE_API kbfe_status kbfe_check_hermitian(const kbfe_table* f, double tol, char** report_json);

/* Structured decompositions. KBFE_FAILED carries the failed invariant and its witness. */
KBFE_API kbfe_status kbfe_decompose_positive(const kbfe_table* f, const kbfe_table* g, double tol,
                                             char** form_json);
KBFE_API kbfe_status kbfe_decompose_hermitian(const kbfe_table* f, const kbfe_table* g, double tol,
                                              char** form_json);
KBFE_API kbfe_status kbfe_decompose_self(const kbfe_table* f, double tol, char** form_json);
KBFE_API kbfe_status kbfe_decompose_vanishing(const kbfe_table* f, const kbfe_table* g, double tol,
                                              uint64_t budget, char** form_json);

/*
 * Tables of a solution form ({"type": "positive" | "hermitian", ...}) on the
 * whole group when it is finite, otherwise on the box of the given radius.
 */
KBFE_API kbfe_status kbfe_synth(const char* form_json, int64_t radius, kbfe_table** f_out, kbfe_table** g_out);

/* Census of sign solutions on a finite group. */
KBFE_API kbfe_status kbfe_enum_signs(const kbfe_group* g, uint64_t budget, char** out_json);
/*
 * Solutions with values in a grid of positive reals. grid_json is a JSON array
 * of values (NULL for {e^-1, 1, e}); the first `keep` solutions are included
 * as tables.
 */
KBFE_API kbfe_status kbfe_enum_kb(const kbfe_group* g, const char* grid_json, uint64_t budget, size_t keep,
                                  char** out_json);

/* "counterexample", "odd-quadratic" or "vanishing". KBFE_FAILED if an expectation is not met. */
KBFE_API kbfe_status kbfe_demo(const char* name, char** out_json);
/* groups_json: JSON array of group strings, NULL for the default list. */
KBFE_API kbfe_status kbfe_suite(const char* groups_json, int trials, uint64_t seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
