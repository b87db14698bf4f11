#ifndef QADEG_H
#define QADEG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QadegStatus {
  QADEG_STATUS_OK = 0,
  QADEG_STATUS_NULL_POINTER = 1,
  QADEG_STATUS_INVALID_ARGUMENT = 2,
  QADEG_STATUS_PARSE = 3,
  QADEG_STATUS_CAPACITY = 4,
  QADEG_STATUS_DOMAIN = 5,
  QADEG_STATUS_CONSTRUCTION = 6,
  QADEG_STATUS_INTERNAL = 7,
  QADEG_STATUS_PANIC = 8,
} QadegStatus;

// Opaque random-codebook addressing scheme.
typedef struct QadegScheme1 QadegScheme1;

// Opaque Hadamard-block addressing scheme.
typedef struct QadegScheme2 QadegScheme2;

// Opaque truth table.
typedef struct QadegTruthTable QadegTruthTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL if none.
// The pointer stays valid until the next failing call on the same thread.
const char *qadeg_last_error_message(void);

// Parses the text format: `n` on the first line, `2^n` characters of 0/1 on the second.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum QadegStatus qadeg_truth_table_parse(const char *text, struct QadegTruthTable **out);

// Builds a table from `len = 2^n` bytes (non-zero means 1), row `r` at index `r`.
//
// # Safety
// `values` must point to `len` readable bytes and `out` must be valid.
enum QadegStatus qadeg_truth_table_from_bits(size_t n,
                                             const uint8_t *values,
                                             size_t len,
                                             struct QadegTruthTable **out);

// # Safety
// `tt` must be NULL or a handle from this library that has not been freed.
void qadeg_truth_table_free(struct QadegTruthTable *tt);

// # Safety
// `tt` must be a live handle and `out` valid.
enum QadegStatus qadeg_truth_table_n(const struct QadegTruthTable *tt, size_t *out);

// # Safety
// `tt` must be a live handle and `out` valid.
enum QadegStatus qadeg_truth_table_degree(const struct QadegTruthTable *tt, size_t *out);

// Influence of variable `i` (1-based) as the reduced fraction `num / den`.
//
// # Safety
// `tt` must be a live handle; `num` and `den` valid.
enum QadegStatus qadeg_truth_table_influence(const struct QadegTruthTable *tt,
                                             size_t i,
                                             uint64_t *num,
                                             uint64_t *den);

// # Safety
// `tt` must be a live handle and `out` valid.
enum QadegStatus qadeg_truth_table_sensitivity(const struct QadegTruthTable *tt, size_t *out);

// Smallest degree whose best uniform approximation error is at most `eps`.
//
// # Safety
// `tt` must be a live handle and `out` valid.
enum QadegStatus qadeg_approx_degree(const struct QadegTruthTable *tt, double eps, size_t *out);

// Best uniform error of a degree-`d` approximation of the 0/1 function.
//
// # Safety
// `tt` must be a live handle and `out` valid.
enum QadegStatus qadeg_minimax_error(const struct QadegTruthTable *tt, size_t d, double *out);

// `exp(-(d / 2e) t^{2/d})`, defined for `t >= (2e)^{d/2}`.
//
// # Safety
// `out` must be valid.
enum QadegStatus qadeg_tail_bound(size_t d, double t, double *out);

// # Safety
// `out` must be valid.
enum QadegStatus qadeg_scheme1_generate(size_t k,
                                        size_t m,
                                        double c,
                                        uint64_t seed,
                                        struct QadegScheme1 **out);

// # Safety
// `scheme` must be NULL or a live handle.
void qadeg_scheme1_free(struct QadegScheme1 *scheme);

// # Safety
// `scheme` must be a live handle and `out` valid.
enum QadegStatus qadeg_scheme1_t_prime(const struct QadegScheme1 *scheme, uint32_t *out);

// Writes codeword `i` (1-based) as `m` bytes of 0/1 into `buffer`.
//
// # Safety
// `scheme` must be a live handle and `buffer` must have room for `len` bytes.
enum QadegStatus qadeg_scheme1_codeword(const struct QadegScheme1 *scheme,
                                        size_t i,
                                        uint8_t *buffer,
                                        size_t len);

// # Safety
// `scheme` must be a live handle, `x` must point to `len` bytes, `out` valid.
enum QadegStatus qadeg_scheme1_exact_success(const struct QadegScheme1 *scheme,
                                             const uint8_t *x,
                                             size_t len,
                                             double *out);

// # Safety
// `out` must be valid.
enum QadegStatus qadeg_scheme2_new(size_t s, size_t t, struct QadegScheme2 **out);

// # Safety
// `scheme` must be NULL or a live handle.
void qadeg_scheme2_free(struct QadegScheme2 *scheme);

// Worst-case queries of one quantum address evaluation.
//
// # Safety
// `scheme` must be a live handle and `out` valid.
enum QadegStatus qadeg_scheme2_query_budget(const struct QadegScheme2 *scheme, uint64_t *out);

// Classical address (1-based) of the `m`-bit input `x`.
//
// # Safety
// `scheme` must be a live handle, `x` must point to `len` bytes, `out` valid.
enum QadegStatus qadeg_scheme2_address(const struct QadegScheme2 *scheme,
                                       const uint8_t *x,
                                       size_t len,
                                       size_t *out);

// # Safety
// `scheme` must be a live handle, `x` must point to `len` bytes, `out` valid.
enum QadegStatus qadeg_scheme2_exact_success(const struct QadegScheme2 *scheme,
                                             const uint8_t *x,
                                             size_t len,
                                             double *out);

// One simulated quantum evaluation with a seeded generator; reports the
// address found and the queries charged.
//
// # Safety
// `scheme` must be a live handle, `x` must point to `len` bytes, outputs valid.
enum QadegStatus qadeg_scheme2_simulate(const struct QadegScheme2 *scheme,
                                        const uint8_t *x,
                                        size_t len,
                                        uint64_t seed,
                                        size_t *address,
                                        uint64_t *queries);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QADEG_H */
