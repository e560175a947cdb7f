#ifndef GSTRUVE_H
#define GSTRUVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_ARGUMENT = 1,
  GS_STATUS_PARSE = 2,
  GS_STATUS_DEGENERATE_PARAMETER = 3,
  GS_STATUS_POLE = 4,
  GS_STATUS_PRECISION_EXHAUSTED = 5,
  GS_STATUS_TRUNCATION_UNSTABLE = 6,
  GS_STATUS_SECTOR_UNSUPPORTED = 7,
  GS_STATUS_ZERO_ARGUMENT = 8,
  GS_STATUS_INVALID_PRECISION = 9,
  GS_STATUS_NUMERIC = 10,
  GS_STATUS_PANIC = 11,
} GsStatus;

// Normalized asymptotic coefficients `c_j`.
typedef struct GsCoeffs GsCoeffs;

// Parameter pair `(a, nu)`.
typedef struct GsParams GsParams;

// A computed value with its error estimate.
typedef struct GsValue GsValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Release with
// `gs_string_free`.
char *gs_last_error(void);

// Library version. Release with `gs_string_free`.
char *gs_version(void);

// # Safety
// `s` is null or was returned by this library and not yet freed.
void gs_string_free(char *s);

// Parses `a` and `nu` (decimal, scientific or `p/q`).
//
// # Safety
// `a` and `nu` are NUL-terminated strings; `out` is a valid pointer.
enum GsStatus gs_params_new(const char *a, const char *nu, struct GsParams **out);

// # Safety
// `p` is null or came from `gs_params_new`.
void gs_params_free(struct GsParams *p);

// Series value of the normalized function at `z = z_re + i z_im`
// (`z_im` may be null) with `digits` significant digits.
//
// # Safety
// `params` came from `gs_params_new`; strings are NUL-terminated; `out`
// is a valid pointer.
enum GsStatus gs_eval_series(const struct GsParams *params,
                             const char *z_re,
                             const char *z_im,
                             uint32_t digits,
                             struct GsValue **out);

// Assembled asymptotic estimate. `trunc < 0` selects optimal truncation,
// otherwise terms `j <= trunc` are kept.
//
// # Safety
// As for `gs_eval_series`.
enum GsStatus gs_eval_asymptotic(const struct GsParams *params,
                                 const char *z_re,
                                 const char *z_im,
                                 uint32_t digits,
                                 int32_t trunc,
                                 struct GsValue **out);

// Real part in scientific notation with `digits` significant digits.
//
// # Safety
// `v` came from an evaluation function and was not freed.
char *gs_value_re(const struct GsValue *v, uint32_t digits);

// # Safety
// As for `gs_value_re`.
char *gs_value_im(const struct GsValue *v, uint32_t digits);

// # Safety
// As for `gs_value_re`.
char *gs_value_error_estimate(const struct GsValue *v);

// Terms summed to produce the value.
//
// # Safety
// As for `gs_value_re`.
uintptr_t gs_value_terms(const struct GsValue *v);

// # Safety
// `v` is null or came from an evaluation function.
void gs_value_free(struct GsValue *v);

// `m` coefficients at `digits` digits, by least squares or (`formal != 0`)
// from the formal Stirling expansion.
//
// # Safety
// `params` came from `gs_params_new`; `out` is a valid pointer.
enum GsStatus gs_coeffs_new(const struct GsParams *params,
                            uintptr_t m,
                            uint32_t digits,
                            int32_t formal,
                            struct GsCoeffs **out);

// # Safety
// `t` came from `gs_coeffs_new` and was not freed.
uintptr_t gs_coeffs_len(const struct GsCoeffs *t);

// `c_j` as a decimal string, or null when `j` is out of range.
//
// # Safety
// As for `gs_coeffs_len`.
char *gs_coeffs_get(const struct GsCoeffs *t, uintptr_t j);

// The table as JSON. Release with `gs_string_free`.
//
// # Safety
// As for `gs_coeffs_len`.
char *gs_coeffs_json(const struct GsCoeffs *t);

// # Safety
// `t` is null or came from `gs_coeffs_new`.
void gs_coeffs_free(struct GsCoeffs *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GSTRUVE_H */
