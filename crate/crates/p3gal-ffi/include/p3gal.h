#ifndef P3GAL_H
#define P3GAL_H

/* Generated by cbindgen from the p3gal-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Error codes mirrored in the generated header.
 */
#define P3GAL_OK 0

#define P3GAL_ERR_ARGUMENT 1

#define P3GAL_ERR_CONGRUENCE 2

#define P3GAL_ERR_PARSE 3

#define P3GAL_ERR_FACTORIZATION 4

#define P3GAL_ERR_CRITERION 5

#define P3GAL_ERR_BUILDER 6

/**
 * Opaque field-element handle (an element of Q(zeta_pr)).
 */
typedef struct P3galElement P3galElement;

/**
 * Opaque tower handle.
 */
typedef struct P3galTower P3galTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build the tower for (p, r). `e` is a primitive root mod p or -1; pass 0
 * to use the default. Returns null on failure and stores the error code
 * in `err` when non-null.
 */
struct P3galTower *p3gal_tower_new(uint64_t p, uint64_t r, int64_t e, int *err);

void p3gal_tower_free(struct P3galTower *t);

/**
 * JSON description of the tower plus its period minimal polynomial.
 */
char *p3gal_tower_describe(const struct P3galTower *t);

/**
 * Parse an element expression (symbols zp, zr, d) in the tower's context.
 */
struct P3galElement *p3gal_element_parse(const struct P3galTower *t, const char *expr, int *err);

void p3gal_element_free(struct P3galElement *x);

/**
 * Criterion verdict for x, including Monte-Carlo p-th-power tests of both
 * b-values, as a JSON report. Null on failure, code in `err`.
 */
char *p3gal_check(const struct P3galTower *t,
                  const struct P3galElement *x,
                  uint64_t mc_trials,
                  uint64_t seed,
                  int *err);

/**
 * Whether the Monte-Carlo test certifies z as a non-p-th power.
 * Returns 1 (certified not a p-th power, witness stored), 0 (probably a
 * p-th power), or -1 on error.
 */
int p3gal_pth_power_test(const struct P3galTower *t,
                         const struct P3galElement *z,
                         uint64_t trials,
                         uint64_t seed,
                         uint64_t *witness);

/**
 * End-to-end degree-9 polynomial build (p = 3). `group` is "h27" or
 * "c9c3"; `theta_expr` may be null (the built-in default applies on the
 * (3,7) tower). Returns the full JSON report.
 */
char *p3gal_build(const struct P3galTower *t,
                  const struct P3galElement *x,
                  const char *group,
                  const char *theta_expr,
                  int override_ideal_test,
                  uint64_t fingerprint_budget,
                  int *err);

/**
 * Frobenius cycle-type survey of a monic polynomial given as a
 * comma-separated ascending coefficient list (rationals as "num/den").
 */
char *p3gal_fingerprint(const char *coeffs, uint64_t budget, uint64_t start, int *err);

/**
 * Release a string returned by this library.
 */
void p3gal_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* P3GAL_H */
