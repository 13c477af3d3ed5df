#ifndef QUADGL_H
#define QUADGL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum QglStatus {
  QGL_STATUS_OK = 0,
  QGL_STATUS_NULL_POINTER = 1,
  QGL_STATUS_INVALID_ARGUMENT = 2,
  QGL_STATUS_IO = 3,
  /*
   A finder returned no structure. Not an error in the input.
   */
  QGL_STATUS_NOT_FOUND = 4,
  QGL_STATUS_INTERNAL = 5,
} QglStatus;

/*
 A quadratic average: one quadratic phase per coset of a subspace.
 */
typedef struct QglAverage QglAverage;

/*
 Output of [`qgl_decompose`].
 */
typedef struct QglDecomposition QglDecomposition;

/*
 `(-1)^{x^T M x + <alpha, x> + c}`.
 */
typedef struct QglPhase QglPhase;

/*
 A real-valued function on `F_2^n`, stored as its table of `2^n` values.
 */
typedef struct QglTable QglTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failing call on this thread, or null. Owned by the
 library; valid until the next failing call.
 */
const char *qgl_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *qgl_version(void);

/*
 Frees a string returned by a `*_json` call.
 */
void qgl_string_free(char *s);

/*
 Copies `len = 2^n` values into a new table.
 */
enum QglStatus qgl_table_new(size_t n, const double *values, size_t len, struct QglTable **out);

/*
 Reads a text or binary table file.
 */
enum QglStatus qgl_table_read(const char *path, struct QglTable **out);

/*
 Writes a ±1 table; `binary != 0` selects the packed format.
 */
enum QglStatus qgl_table_write(const struct QglTable *table, const char *path, int32_t binary);

void qgl_table_free(struct QglTable *table);

/*
 `n` of the table, or 0 for null.
 */
size_t qgl_table_n(const struct QglTable *table);

/*
 `f(x)`, with the bits of `x` as coordinates.
 */
enum QglStatus qgl_table_get(const struct QglTable *table, uint64_t x, double *out);

/*
 A random quadratic phase and its codeword with exactly
 `round((1/2 - epsilon) 2^n)` flipped entries.
 */
enum QglStatus qgl_gen_noisy_phase(size_t n,
                                   double epsilon,
                                   uint64_t seed,
                                   struct QglTable **out_table,
                                   struct QglPhase **out_phase);

/*
 Writes the `2^n` Fourier coefficients into `out`, indexed by `alpha`.
 */
enum QglStatus qgl_wht(const struct QglTable *table, double *out, size_t len);

/*
 Exact `‖f‖_{U^3}`.
 */
enum QglStatus qgl_u3_exact(const struct QglTable *table, double *out);

/*
 Sampled `‖f‖_{U^3}` within `gamma` with probability `1 - delta`.
 */
enum QglStatus qgl_u3_estimate(const struct QglTable *table,
                               double gamma,
                               double delta,
                               uint64_t seed,
                               double *out);

/*
 A quadratic phase correlating with the table, with the practical profile.
 Returns `NotFound` on bottom.
 */
enum QglStatus qgl_find_quadratic(const struct QglTable *table,
                                  double epsilon,
                                  double delta,
                                  uint64_t seed,
                                  struct QglPhase **out);

void qgl_phase_free(struct QglPhase *phase);

/*
 `n` of the phase, or 0 for null.
 */
size_t qgl_phase_n(const struct QglPhase *phase);

/*
 `±1` value at `x`.
 */
enum QglStatus qgl_phase_eval(const struct QglPhase *phase, uint64_t x, int32_t *out);

/*
 Exact `E f(x) (-1)^{q(x)}`.
 */
enum QglStatus qgl_phase_correlation(const struct QglPhase *phase,
                                     const struct QglTable *table,
                                     double *out);

/*
 JSON form of the phase; free with [`qgl_string_free`].
 */
enum QglStatus qgl_phase_json(const struct QglPhase *phase, char **out);

/*
 A quadratic average correlating with the table, complexity at most
 `max_complexity`. Returns `NotFound` on bottom.
 */
enum QglStatus qgl_find_quadratic_average(const struct QglTable *table,
                                          double epsilon,
                                          double delta,
                                          size_t max_complexity,
                                          uint64_t seed,
                                          struct QglAverage **out);

void qgl_average_free(struct QglAverage *average);

/*
 Codimension of the subspace, or 0 for null.
 */
size_t qgl_average_complexity(const struct QglAverage *average);

/*
 Exact `E f(x) Q(x)`.
 */
enum QglStatus qgl_average_correlation(const struct QglAverage *average,
                                       const struct QglTable *table,
                                       double *out);

/*
 JSON form of the average; free with [`qgl_string_free`].
 */
enum QglStatus qgl_average_json(const struct QglAverage *average, char **out);

/*
 Splits the table into quadratic phases plus a small and a uniform part,
 with the practical settings and phase steps taken on the bounded residual.
 */
enum QglStatus qgl_decompose(const struct QglTable *table,
                             double epsilon,
                             double bound,
                             double delta,
                             uint64_t seed,
                             struct QglDecomposition **out);

void qgl_decomposition_free(struct QglDecomposition *d);

/*
 Number of terms, or 0 for null.
 */
size_t qgl_decomposition_k(const struct QglDecomposition *d);

/*
 `‖f‖_{U^3}` of the final bounded residual, exact or estimated.
 */
enum QglStatus qgl_decomposition_residual_u3(const struct QglDecomposition *d, double *out);

/*
 Value of the structured part `Σ c_i q_i(x)`.
 */
enum QglStatus qgl_decomposition_eval(const struct QglDecomposition *d, uint64_t x, double *out);

/*
 JSON summary; free with [`qgl_string_free`].
 */
enum QglStatus qgl_decomposition_json(const struct QglDecomposition *d, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADGL_H */
