#ifndef TWISTLAB_H
#define TWISTLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TwlPresentationKind {
  /**
   * Generators `bs, b, a, as`.
   */
  TWL_PRESENTATION_KIND_QTRIAG = 0,
  /**
   * Generators `Mb, Ma, Phb, Pha`.
   */
  TWL_PRESENTATION_KIND_POLAR = 1,
} TwlPresentationKind;

typedef enum TwlStatus {
  TWL_STATUS_OK = 0,
  TWL_STATUS_NULL_POINTER = 1,
  TWL_STATUS_INVALID_UTF8 = 2,
  TWL_STATUS_SYNTAX = 3,
  TWL_STATUS_UNKNOWN_GENERATOR = 4,
  TWL_STATUS_INVALID_ARGUMENT = 5,
  TWL_STATUS_NOT_BICHARACTER = 6,
  TWL_STATUS_ALGEBRA = 7,
  TWL_STATUS_IO = 8,
  TWL_STATUS_PANIC = 9,
} TwlStatus;

typedef struct TwlFinGroup TwlFinGroup;

typedef struct TwlPresentation TwlPresentation;

typedef struct TwlReport TwlReport;

/**
 * Named residuals of the finite twisting suite.
 */
typedef struct TwlFintwistResiduals {
  double omega_unitarity;
  double cocycle;
  double coassoc;
  double haar_left;
  double haar_right;
  double pentagon;
  double pentagon_twisted;
  double corrupted_cocycle;
  double corrupted_pentagon;
} TwlFintwistResiduals;

typedef struct TwlSpectrum {
  double ratio;
  double ratio_residual;
  double min_eigenvalue;
  bool strictly_decreasing;
} TwlSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *twl_version(void);

/**
 * Length in bytes of the last error message on this thread, without the
 * terminator; 0 when there is none.
 */
size_t twl_last_error_length(void);

/**
 * Copy the last error message into `buf` (capacity `len`, including the
 * terminator). Returns the number of bytes written without the terminator,
 * or -1 when `buf` is null or too small.
 *
 * # Safety
 * `buf` must point to `len` writable bytes.
 */
int64_t twl_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void twl_string_free(char *s);

/**
 * # Safety
 * `out` must be writable.
 */
enum TwlStatus twl_presentation_new(enum TwlPresentationKind kind, struct TwlPresentation **out);

/**
 * # Safety
 * `p` must come from [`twl_presentation_new`] or be null.
 */
void twl_presentation_free(struct TwlPresentation *p);

/**
 * Parse `expr` and write its normal form, printed in the same grammar.
 *
 * # Safety
 * `p` must be a live handle, `expr` a NUL-terminated string and `out`
 * writable.
 */
enum TwlStatus twl_normal_form(const struct TwlPresentation *p, const char *expr, char **out);

/**
 * The q-commutation scalar derived from the polar relations, printed.
 *
 * # Safety
 * `out` must be writable.
 */
enum TwlStatus twl_derive_q(char **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum TwlStatus twl_fingroup_new(uint64_t n, struct TwlFinGroup **out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum TwlStatus twl_fingroup_order(const struct TwlFinGroup *g, size_t *out);

/**
 * # Safety
 * `g` must come from [`twl_fingroup_new`] or be null.
 */
void twl_fingroup_free(struct TwlFinGroup *g);

/**
 * Run the finite twisting suite with a named bicharacter (`trivial`,
 * `i^{ab}` or `zeta^{ab}`).
 *
 * # Safety
 * `g` must be a live handle, `bichar` a NUL-terminated string and `out`
 * writable.
 */
enum TwlStatus twl_fintwist_run(const struct TwlFinGroup *g,
                                const char *bichar,
                                uint64_t seed,
                                struct TwlFintwistResiduals *out);

/**
 * Spectrum summary of the truncated modular element at radius `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TwlStatus twl_spectrum(double x, size_t n, struct TwlSpectrum *out);

/**
 * Writes `true` when the point spectra for `x` and `y` differ.
 *
 * # Safety
 * `out_distinct` must be writable.
 */
enum TwlStatus twl_witness(double x, double y, bool *out_distinct);

/**
 * Run a command-line invocation (without the program name), e.g.
 * `{"spectrum", "--x", "0.1"}`. A report is produced even when the checks
 * fail; only argument errors return a non-OK status.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings and `out` be writable.
 */
enum TwlStatus twl_run(size_t argc, const char *const *argv, struct TwlReport **out);

/**
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum TwlStatus twl_report_pass(const struct TwlReport *r, bool *out);

/**
 * The report as JSON with sorted keys.
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum TwlStatus twl_report_json(const struct TwlReport *r, char **out);

/**
 * # Safety
 * `r` must come from [`twl_run`] or be null.
 */
void twl_report_free(struct TwlReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTLAB_H */
