/* C interface for the oscillatory Hilbert transform library. */

#ifndef OHT_H
#define OHT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
enum OhtStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  OhtStatus_Ok = 0,
  OhtStatus_NullArgument = 1,
  OhtStatus_InvalidUtf8 = 2,
  OhtStatus_NotRegistered = 3,
  OhtStatus_DomainError = 4,
  OhtStatus_ParamError = 5,
  OhtStatus_EvalError = 6,
  OhtStatus_SolveError = 7,
  OhtStatus_OracleError = 8,
  OhtStatus_Panic = 9,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum OhtStatus OhtStatus;
#else
typedef int32_t OhtStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Evaluation method selector.
 */
enum OhtMethod
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  OhtMethod_Auto = 0,
  OhtMethod_Away = 1,
  OhtMethod_Near = 2,
  OhtMethod_Origin = 3,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum OhtMethod OhtMethod;
#else
typedef int32_t OhtMethod;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Bessel oscillator family selector.
 */
enum OhtBesselFamily
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  OhtBesselFamily_J = 0,
  OhtBesselFamily_Y = 1,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum OhtBesselFamily OhtBesselFamily;
#else
typedef int32_t OhtBesselFamily;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/**
 * Opaque oscilland handle.
 */
typedef struct OhtOscilland OhtOscilland;

/**
 * Evaluation parameters. Zero orders, non-positive `a`, zero `moment_n1`,
 * and non-positive `x_split` select the library defaults.
 */
typedef struct OhtEvalParams {
  uint32_t laguerre_n;
  uint32_t cheb_n;
  double a;
  uint32_t moment_n1;
  double x_split;
} OhtEvalParams;

/**
 * A complex value passed across the boundary.
 */
typedef struct OhtComplex {
  double re;
  double im;
} OhtComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Fills `out` with the library's default evaluation parameters.
 */
OhtStatus oht_params_default(struct OhtEvalParams *out);

/**
 * Creates an oscilland from a registry label (`one`, `exp:<c>`,
 * `sqrt_over_1p`, `cos_over_cbrt`). On success writes a handle the caller
 * must release with `oht_oscilland_free`.
 */
OhtStatus oht_oscilland_registry(const char *label, struct OhtOscilland **out);

/**
 * Releases an oscilland handle. A null pointer is a no-op.
 */
void oht_oscilland_free(struct OhtOscilland *handle);

/**
 * Branch exponent α of the oscilland's origin singularity.
 */
OhtStatus oht_oscilland_alpha(const struct OhtOscilland *handle, double *out);

/**
 * Evaluates H⁺(f(t) e^{iωt})(x). `method` takes an `OhtMethod` value
 * (out-of-range integers are rejected, not trusted); `params` may be null
 * for defaults; `err_estimate` may be null when the caller does not want it.
 */
OhtStatus oht_eval(const struct OhtOscilland *handle,
                   int32_t method,
                   double omega,
                   double x,
                   const struct OhtEvalParams *params,
                   struct OhtComplex *value,
                   double *err_estimate);

/**
 * Evaluates ⨍₀^∞ f(t) B_ν(ωt)/(t−x) dt for B = J or Y, ν ∈ {0, 1}.
 * `family` takes an `OhtBesselFamily` value.
 */
OhtStatus oht_eval_bessel(const struct OhtOscilland *handle,
                          int32_t family,
                          uint32_t nu,
                          double omega,
                          double x,
                          struct OhtComplex *value,
                          double *err_estimate);

/**
 * Slow self-validating reference evaluation (rotated-contour panels for
 * x > 0, the finite-part route at x = 0).
 */
OhtStatus oht_reference(const struct OhtOscilland *handle,
                        double omega,
                        double x,
                        struct OhtComplex *value,
                        double *est_err);

/**
 * Static, null-terminated description of a status code. Unknown codes map
 * to a generic message.
 */
const char *oht_status_message(int32_t status);

/**
 * Library version as a static, null-terminated string.
 */
const char *oht_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OHT_H */
