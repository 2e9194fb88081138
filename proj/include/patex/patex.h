#ifndef PATEX_PATEX_H
#define PATEX_PATEX_H

/* C interface to the patex library.
 *
 * Every fallible call returns a patex_status; on failure the message is
 * available from patex_last_error() on the same thread. Strings returned
 * through char** are owned by the caller and released with
 * patex_string_free. Matrix get/set indices are 0-based; coordinates in
 * containment maps and in JSON renderings are 1-based. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define PATEX_API __declspec(dllexport)
#else
#  define PATEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum patex_status {
  PATEX_OK = 0,
  PATEX_ERR_PARSE = 1,
  PATEX_ERR_CATALOG = 2,
  PATEX_ERR_SIZE_GUARD = 3,
  PATEX_ERR_PRECONDITION = 4,
  PATEX_ERR_DOMAIN = 5,
  PATEX_ERR_IO = 6,
  PATEX_ERR_NULL_ARG = 7,
  PATEX_ERR_INTERNAL = 8
} patex_status;

typedef struct patex_matrix patex_matrix;
typedef struct patex_ex_result patex_ex_result;
typedef struct patex_candidates patex_candidates;

PATEX_API const char* patex_last_error(void);
PATEX_API const char* patex_status_name(patex_status status);
PATEX_API void patex_string_free(char* s);
PATEX_API const char* patex_version(void);

/* ---- matrices ---------------------------------------------------------- */

/* Text format: rows of 0/1 (or '.' and '*'), one per line. */
PATEX_API patex_status patex_matrix_parse(const char* text, patex_matrix** out);
/* {"rows": r, "cols": c, "data": ["0101", ...]} */
PATEX_API patex_status patex_matrix_from_json(const char* json, patex_matrix** out);
/* Catalog ids: R, Q1, Q3, S1, S2, TWO_AND_TWO. */
PATEX_API patex_status patex_matrix_builtin(const char* name, patex_matrix** out);
PATEX_API patex_status patex_matrix_new(size_t rows, size_t cols, patex_matrix** out);
PATEX_API patex_status patex_matrix_clone(const patex_matrix* m, patex_matrix** out);
PATEX_API void patex_matrix_free(patex_matrix* m);

PATEX_API size_t patex_matrix_rows(const patex_matrix* m);
PATEX_API size_t patex_matrix_cols(const patex_matrix* m);
PATEX_API size_t patex_matrix_ones(const patex_matrix* m);
PATEX_API patex_status patex_matrix_get(const patex_matrix* m, size_t row, size_t col, int* value);
PATEX_API patex_status patex_matrix_set(patex_matrix* m, size_t row, size_t col, int value);
PATEX_API int patex_matrix_equal(const patex_matrix* a, const patex_matrix* b);

PATEX_API patex_status patex_matrix_format(const patex_matrix* m, char** out);
PATEX_API patex_status patex_matrix_to_json(const patex_matrix* m, char** out);
/* "RxC:bits", row-major. */
PATEX_API patex_status patex_matrix_key(const patex_matrix* m, char** out);
/* Symmetry names: identity, mirror_columns, mirror_rows, transpose,
 * anti_transpose, rotate90, rotate180, rotate270. */
PATEX_API patex_status patex_matrix_apply_symmetry(const patex_matrix* m, const char* symmetry,
                                                   patex_matrix** out);
PATEX_API patex_status patex_matrix_canonical(const patex_matrix* m, patex_matrix** out);

/* ---- containment ------------------------------------------------------- */

/* *found is 1 when the haystack contains the needle. row_map (needle rows
 * entries) and col_map (needle cols entries) may be NULL; when given and a
 * match exists they receive the lexicographically least embedding, 1-based. */
PATEX_API patex_status patex_contains(const patex_matrix* haystack, const patex_matrix* needle,
                                      int* found, size_t* row_map, size_t* col_map);
PATEX_API patex_status patex_contains_bruteforce(const patex_matrix* haystack,
                                                 const patex_matrix* needle, int* found,
                                                 size_t* row_map, size_t* col_map);

/* ---- extremal function ------------------------------------------------- */

PATEX_API patex_status patex_ex_exact(size_t n, const patex_matrix* pattern,
                                      uint64_t node_budget, patex_ex_result** out);
/* cache_path NULL: default location; "": no cache. */
PATEX_API patex_status patex_ex_cached(size_t n, const patex_matrix* pattern,
                                       const char* cache_path, uint64_t node_budget,
                                       uint64_t seed, patex_ex_result** out);
PATEX_API patex_status patex_ex_greedy(size_t n, const patex_matrix* pattern, uint64_t seed,
                                       patex_ex_result** out);
PATEX_API patex_status patex_ex_bruteforce(size_t n, const patex_matrix* pattern,
                                           size_t* value);
PATEX_API void patex_ex_free(patex_ex_result* r);

PATEX_API size_t patex_ex_value(const patex_ex_result* r);
PATEX_API int patex_ex_is_exact(const patex_ex_result* r);
PATEX_API uint64_t patex_ex_nodes(const patex_ex_result* r);
PATEX_API double patex_ex_elapsed_ms(const patex_ex_result* r);
/* Borrowed; valid until patex_ex_free. */
PATEX_API const patex_matrix* patex_ex_witness(const patex_ex_result* r);
PATEX_API int patex_ex_cache_hit(const patex_ex_result* r);
PATEX_API size_t patex_ex_warning_count(const patex_ex_result* r);
PATEX_API const char* patex_ex_warning(const patex_ex_result* r, size_t i);
PATEX_API patex_status patex_ex_to_json(const patex_ex_result* r, int with_stats, char** out);

PATEX_API patex_status patex_ex_table_json(const patex_matrix* pattern, size_t n_max,
                                           uint64_t node_budget, uint64_t seed, char** out);

/* ---- structure checks -------------------------------------------------- */

/* Comma-separated: cross, strip, row_counts, top_bottom, extreme_rows,
 * depth, all, none. */
PATEX_API patex_status patex_parse_filters(const char* list, unsigned* filters);
PATEX_API unsigned patex_all_filters(void);

/* Full report on M and its transpose as JSON. */
PATEX_API patex_status patex_check_json(const patex_matrix* m, unsigned filters, int* passed,
                                        char** out);
/* *out is NULL when every check passes. */
PATEX_API patex_status patex_first_failing_check(const patex_matrix* m, unsigned filters,
                                                 char** out);
PATEX_API patex_status patex_reduce_once_json(const patex_matrix* m, int* claims_hold,
                                              char** out);
/* Decimal string. */
PATEX_API patex_status patex_count_bound(size_t k, char** out);

/* ---- enumeration ------------------------------------------------------- */

typedef struct patex_enum_options {
  size_t k;
  size_t max_cols; /* 0: 4k-4 */
  unsigned filters;
  unsigned threads;
  uint64_t node_budget;
} patex_enum_options;

PATEX_API void patex_enum_options_init(patex_enum_options* options, size_t k);
PATEX_API patex_status patex_enumerate(const patex_enum_options* options,
                                       patex_candidates** out);
PATEX_API size_t patex_candidates_count(const patex_candidates* c);
/* Borrowed; valid until patex_candidates_free. */
PATEX_API const patex_matrix* patex_candidates_at(const patex_candidates* c, size_t i);
PATEX_API patex_status patex_candidates_stats_json(const patex_candidates* c, char** out);
PATEX_API void patex_candidates_free(patex_candidates* c);

PATEX_API patex_status patex_verify_bounds(const patex_enum_options* options, int* passed,
                                           char** out);

#ifdef __cplusplus
}
#endif

#endif
