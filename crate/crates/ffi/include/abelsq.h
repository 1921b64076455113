#ifndef ABELSQ_H
#define ABELSQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AbelsqStatus {
  ABELSQ_STATUS_OK = 0,
  ABELSQ_STATUS_NULL_POINTER = 1,
  ABELSQ_STATUS_INVALID_ARGUMENT = 2,
  ABELSQ_STATUS_PARSE = 3,
  /**
   * Prefix or precision cap reached before the answer was certified.
   */
  ABELSQ_STATUS_RESOURCE_CAP = 4,
  /**
   * The value does not fit the output type, or an evaluation produced a non-integer.
   */
  ABELSQ_STATUS_NUMERIC = 5,
  /**
   * The output buffer is too small; the required size was written.
   */
  ABELSQ_STATUS_BUFFER_TOO_SMALL = 6,
  ABELSQ_STATUS_PANIC = 7,
} AbelsqStatus;

/**
 * A real `α` in `(0, 1)` given by a continued fraction, with certified comparisons.
 */
typedef struct AbelsqAlpha AbelsqAlpha;

/**
 * Distinct abelian-square counts of a finite word, per length.
 */
typedef struct AbelsqSpectrum AbelsqSpectrum;

/**
 * A finite word.
 */
typedef struct AbelsqWord AbelsqWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. Owned by the library.
 */
const char *abelsq_last_error(void);

/**
 * Library version as a static string.
 */
const char *abelsq_version(void);

/**
 * Parses a word written with letters `a`, `b`, ... or with the digits `0`/`1`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum AbelsqStatus abelsq_word_from_text(const char *text, struct AbelsqWord **out);

/**
 * First `len` letters of the Thue-Morse word, over `{0, 1}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AbelsqStatus abelsq_word_thue_morse(size_t len, struct AbelsqWord **out);

/**
 * First `len` letters of the Fibonacci word `abaababaab...`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AbelsqStatus abelsq_word_fibonacci(size_t len, struct AbelsqWord **out);

/**
 * Length of a word; `0` for a null handle.
 *
 * # Safety
 * `word` must be null or a live handle.
 */
size_t abelsq_word_len(const struct AbelsqWord *word);

/**
 * Writes the word as text into `buf` (nul-terminated). `needed` receives the size
 * including the terminator; with a short buffer nothing is written but `needed`.
 *
 * # Safety
 * `word` must be a live handle, `buf` valid for `buf_len` bytes (or null with `buf_len == 0`),
 * `needed` null or valid.
 */
enum AbelsqStatus abelsq_word_text(const struct AbelsqWord *word,
                                   char *buf,
                                   size_t buf_len,
                                   size_t *needed);

/**
 * # Safety
 * `word` must be null or a handle not yet freed.
 */
void abelsq_word_free(struct AbelsqWord *word);

/**
 * Counts distinct abelian squares of every length in `word`.
 *
 * # Safety
 * `word` must be a live handle and `out` a valid pointer.
 */
enum AbelsqStatus abelsq_spectrum_new(const struct AbelsqWord *word, struct AbelsqSpectrum **out);

/**
 * Number of distinct abelian squares of length `m`.
 *
 * # Safety
 * `spec` must be null or a live handle.
 */
uint64_t abelsq_spectrum_count_at(const struct AbelsqSpectrum *spec, size_t m);

/**
 * Total number of distinct abelian squares.
 *
 * # Safety
 * `spec` must be null or a live handle.
 */
uint64_t abelsq_spectrum_total(const struct AbelsqSpectrum *spec);

/**
 * # Safety
 * `spec` must be null or a handle not yet freed.
 */
void abelsq_spectrum_free(struct AbelsqSpectrum *spec);

/**
 * `f(n)`, the number of distinct abelian squares of order `n` (length `2n`) in the
 * Thue-Morse word, as a decimal string. `method` is 0 for the matrix evaluator and
 * 1 for the recurrences.
 *
 * # Safety
 * `buf` valid for `buf_len` bytes (or null with `buf_len == 0`), `needed` null or valid.
 */
enum AbelsqStatus abelsq_tm_f(uint64_t n,
                              uint32_t method,
                              char *buf,
                              size_t buf_len,
                              size_t *needed);

/**
 * `f(n)` by the matrix evaluator, when it fits in 64 bits.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AbelsqStatus abelsq_tm_f_u64(uint64_t n, uint64_t *out);

/**
 * Parses `α` from a continued fraction such as `[0; | 1]` or `[0; 2, 3, 1]`.
 * `precision_cap` bounds the convergents used; 0 selects the default.
 *
 * # Safety
 * `cf` must be a nul-terminated string and `out` a valid pointer.
 */
enum AbelsqStatus abelsq_alpha_from_cf(const char *cf,
                                       size_t precision_cap,
                                       struct AbelsqAlpha **out);

/**
 * # Safety
 * `alpha` must be null or a handle not yet freed.
 */
void abelsq_alpha_free(struct AbelsqAlpha *alpha);

/**
 * Distinct abelian squares of length `n` in the characteristic Sturmian word of slope `α`.
 *
 * # Safety
 * `alpha` must be a live handle and `out` a valid pointer.
 */
enum AbelsqStatus abelsq_sturmian_as_count(const struct AbelsqAlpha *alpha,
                                           size_t n,
                                           uint64_t *out);

/**
 * `N · D_N` for the points `{kα}`, `0 <= k <= N`, as a double.
 *
 * # Safety
 * `alpha` must be a live handle and `out` a valid pointer.
 */
enum AbelsqStatus abelsq_discrepancy_scaled(const struct AbelsqAlpha *alpha, size_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABELSQ_H */
