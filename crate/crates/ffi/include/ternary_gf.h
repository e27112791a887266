#ifndef TERNARY_GF_H
#define TERNARY_GF_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Identity checks available on a [`TgContext`].
 */
typedef enum TgCheck {
  TG_CHECK_CUBIC_RESIDUAL = 0,
  TG_CHECK_VIETA_PRODUCT = 1,
  TG_CHECK_FACTORIZATION = 2,
  TG_CHECK_XI_GOLDEN = 3,
} TgCheck;

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  TG_STATUS_NULL_POINTER = 1,
  TG_STATUS_INVALID_ARGUMENT = 2,
  TG_STATUS_BOUND_EXCEEDED = 3,
  TG_STATUS_PARSE_ERROR = 4,
  TG_STATUS_OUT_OF_RANGE = 5,
  TG_STATUS_PANIC = 6,
} TgStatus;

/**
 * Opaque series context on a `(t, U)` grid.
 */
typedef struct TgContext TgContext;

/**
 * Opaque ternary tree.
 */
typedef struct TgTree TgTree;

/**
 * Opaque table `T(n, k)`.
 */
typedef struct TgTriangle TgTriangle;

/**
 * Outcome of an identity check. When `passed` is false, `offending_i` and
 * `offending_j` locate the first coefficient that differs.
 */
typedef struct TgCheckResult {
  bool passed;
  size_t grid_1;
  size_t grid_2;
  size_t offending_i;
  size_t offending_j;
} TgCheckResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread. The pointer is
 * owned by the library and valid until the next `tg_*` call on the thread.
 */
const char *tg_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void tg_string_free(char *s);

/**
 * `T(n, k)` as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum TgStatus tg_t_closed(uint64_t n, uint64_t k, char **out);

/**
 * Closed-form table for rows `0..=nmax`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum TgStatus tg_triangle_closed(size_t nmax, struct TgTriangle **out);

/**
 * Brute-force table by exhaustive enumeration; fails with
 * `TG_STATUS_BOUND_EXCEEDED` above the enumeration bound.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum TgStatus tg_triangle_oracle(size_t nmax, struct TgTriangle **out);

/**
 * # Safety
 * `tri` must be NULL or a live handle from `tg_triangle_*`.
 */
size_t tg_triangle_nmax(const struct TgTriangle *tri);

/**
 * Entry `(n, k)` as a decimal string. `k` past the end of row `n` gives
 * zero; `n` beyond the table's `nmax` is out of range.
 *
 * # Safety
 * `tri` must be a live handle and `out` valid writable storage.
 */
enum TgStatus tg_triangle_entry(const struct TgTriangle *tri, size_t n, size_t k, char **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` valid writable storage.
 */
enum TgStatus tg_triangle_equal(const struct TgTriangle *a, const struct TgTriangle *b, bool *out);

/**
 * # Safety
 * `tri` must be NULL or a handle not yet freed.
 */
void tg_triangle_free(struct TgTriangle *tri);

/**
 * Builds every standard series on the `(t, U)` grid `(order_t, order_u)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum TgStatus tg_context_new(size_t order_t, size_t order_u, struct TgContext **out);

/**
 * # Safety
 * `ctx` must be a live handle and `out` valid writable storage.
 */
enum TgStatus tg_context_check(const struct TgContext *ctx,
                               enum TgCheck check,
                               struct TgCheckResult *out);

/**
 * Coefficient of `tau^n U^j` in the expansion of `Xi`, as `p/q`.
 *
 * # Safety
 * `ctx` must be a live handle and `out` valid writable storage.
 */
enum TgStatus tg_context_xi_coeff(const struct TgContext *ctx, size_t n, size_t j, char **out);

/**
 * # Safety
 * `ctx` must be NULL or a handle not yet freed.
 */
void tg_context_free(struct TgContext *ctx);

/**
 * `r1` composed with the reversion of the substitution equals the tree
 * generating function on the `(x, u)` grid `(order_x, order_u)`.
 *
 * # Safety
 * `out` must be valid writable storage.
 */
enum TgStatus tg_compose_g_check(size_t order_x, size_t order_u, struct TgCheckResult *out);

/**
 * Parses the preorder serialization (`N` node, `.` empty slot).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` valid writable storage.
 */
enum TgStatus tg_tree_parse(const char *text, struct TgTree **out);

/**
 * The 17-node example tree with three middle edges.
 *
 * # Safety
 * `out` must be valid writable storage.
 */
enum TgStatus tg_tree_example(struct TgTree **out);

/**
 * # Safety
 * `tree` must be NULL or a live handle.
 */
size_t tg_tree_nodes(const struct TgTree *tree);

/**
 * # Safety
 * `tree` must be NULL or a live handle.
 */
size_t tg_tree_middle_edges(const struct TgTree *tree);

/**
 * # Safety
 * `tree` must be a live handle and `out` valid writable storage.
 */
enum TgStatus tg_tree_to_dot(const struct TgTree *tree, char **out);

/**
 * # Safety
 * `tree` must be NULL or a handle not yet freed.
 */
void tg_tree_free(struct TgTree *tree);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TERNARY_GF_H */
