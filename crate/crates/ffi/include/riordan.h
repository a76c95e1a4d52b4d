/* C interface to the riordan engine: truncated power series over exact
 * rationals, the Riordan ⋊ product, the formal calculus Φ, and Riordan
 * matrices.
 *
 * Maintained by hand; must stay in sync with src/lib.rs.
 *
 * Conventions:
 *   - RdSeries / RdPair are opaque handles. Free them with the matching
 *     rd_*_free; freeing NULL is a no-op; double frees are undefined.
 *   - Every fallible function returns an RdStatus. On failure the output
 *     parameter is left untouched and rd_last_error_message() describes the
 *     most recent failure on the calling thread.
 *   - Strings written through `char **` are NUL-terminated UTF-8 owned by the
 *     caller: release them with rd_string_free.
 */

#ifndef RIORDAN_H
#define RIORDAN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle to a truncated power series. */
typedef struct RdSeries RdSeries;
/* Opaque handle to a pair (mu ; sigma). */
typedef struct RdPair RdPair;

typedef enum RdStatus {
  RD_OK = 0,
  /* A structural or domain precondition failed (precision mismatch,
   * non-invertible element, argument outside the required ideal, ...). */
  RD_DOMAIN_ERROR = 1,
  /* Malformed input text or an invalid argument such as a null pointer. */
  RD_PARSE_ERROR = 2,
  /* Internal failure (a panic crossed the boundary). */
  RD_INTERNAL_ERROR = 3,
} RdStatus;

/* Message for the last error raised on this thread, or "". The pointer stays
 * valid until the next failing call on the same thread; do not free it. */
const char *rd_last_error_message(void);

void rd_string_free(char *s);
void rd_series_free(RdSeries *h);
void rd_pair_free(RdPair *h);

/* --- series ------------------------------------------------------------- */

/* Parses a series like "1 + 2*x - x^3 + O(x^5)". Without an O() suffix the
 * series is read at default_precision. */
RdStatus rd_series_parse(const char *text, size_t default_precision,
                         RdSeries **out);
RdStatus rd_series_to_string(const RdSeries *h, char **out);
RdStatus rd_series_precision(const RdSeries *h, size_t *out);

/* Binary operations require both operands to have the same precision. */
RdStatus rd_series_add(const RdSeries *a, const RdSeries *b, RdSeries **out);
RdStatus rd_series_mul(const RdSeries *a, const RdSeries *b, RdSeries **out);
/* Substitution a ∘ b; b must have zero constant term. */
RdStatus rd_series_substitute(const RdSeries *a, const RdSeries *b,
                              RdSeries **out);
/* Requires a nonzero constant term. */
RdStatus rd_series_mul_inverse(const RdSeries *a, RdSeries **out);
/* Requires valuation exactly 1. */
RdStatus rd_series_comp_inverse(const RdSeries *a, RdSeries **out);
/* exp(a); requires zero constant term. */
RdStatus rd_series_exp(const RdSeries *a, RdSeries **out);
/* log(a); requires constant term 1. */
RdStatus rd_series_log(const RdSeries *a, RdSeries **out);

/* --- pairs (mu ; sigma) -------------------------------------------------- */

/* Parses a pair like "(1 + x ; x + x^2)". */
RdStatus rd_pair_parse(const char *text, size_t default_precision,
                       RdPair **out);
RdStatus rd_pair_to_string(const RdPair *h, char **out);

/* The ⋊ product. */
RdStatus rd_pair_rtimes(const RdPair *a, const RdPair *b, RdPair **out);
/* The n-th ⋊ power, via the closed form. */
RdStatus rd_pair_power(const RdPair *a, size_t n, RdPair **out);
/* Inverse in the Riordan group; requires mu(0) = 1 and sigma'(0) = 1. */
RdStatus rd_pair_group_inverse(const RdPair *a, RdPair **out);
/* Generalized binomial ⋊-power; lambda is a rational in text, e.g. "-3/2". */
RdStatus rd_pair_genpow(const RdPair *a, const char *lambda, RdPair **out);

/* Φ_base(f): evaluates f in the ⋊-powers of an ideal base pair (mu with no
 * constant term, sigma with no constant or linear term). */
RdStatus rd_phi_apply(const RdPair *base, const RdSeries *f, RdPair **out);

/* --- Riordan matrices ----------------------------------------------------- */

/* Leading n-by-n block of the Riordan matrix, as CSV rows of exact
 * rationals "p/q". */
RdStatus rd_matrix_csv(const RdPair *a, size_t n, char **out);
/* Same block as JSON: {"n", "mu", "sigma", "rows"}. */
RdStatus rd_matrix_json(const RdPair *a, size_t n, char **out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RIORDAN_H */
