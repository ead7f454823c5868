#ifndef PARITY_LAB_H
#define PARITY_LAB_H

#include <stdbool.h>
#include <stdint.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_ARGUMENT = 1,
  PL_STATUS_INVALID_UTF8 = 2,
  PL_STATUS_PARSE_ERROR = 3,
  PL_STATUS_INVALID_MODULUS = 4,
  PL_STATUS_DEGENERATE_COMPOSITION = 5,
  PL_STATUS_WITNESS_CHECK_FAILED = 6,
  PL_STATUS_PANIC = 7,
} PlStatus;

typedef enum PlClassKind {
  // The zero function, a member of every class.
  PL_CLASS_KIND_ZERO = 0,
  PL_CLASS_KIND_NOT_CYCLIC = 1,
  PL_CLASS_KIND_CYCLIC = 2,
} PlClassKind;

// Case letters of the even/odd classifiers.
typedef enum PlCase {
  // Even (odd for the odd classifier).
  PL_CASE_A = 0,
  // Odd plus a constant.
  PL_CASE_B = 1,
  // Quadratic of odd: `(s + d)^2 + k`.
  PL_CASE_C = 2,
  PL_CASE_NONE = 3,
} PlCase;

// Opaque polynomial in `z` and `w`.
typedef struct PlBiPoly PlBiPoly;

// Opaque univariate polynomial.
typedef struct PlPoly PlPoly;

// Opaque rational function.
typedef struct PlRational PlRational;

typedef struct PlCyclicClass {
  enum PlClassKind kind;
  // The residue `k` when `kind` is `Cyclic`, otherwise 0.
  uint64_t residue;
} PlCyclicClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next library call on the same thread.
const char *pl_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void pl_string_free(char *s);

// Parses a polynomial in `z`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PlStatus pl_poly_parse(const char *text, struct PlPoly **out);

// # Safety
// `p` must be NULL or a handle from this library not yet freed.
void pl_poly_free(struct PlPoly *p);

// Canonical text, or NULL if `p` is NULL. Free with [`pl_string_free`].
//
// # Safety
// `p` must be NULL or a live handle.
char *pl_poly_to_string(const struct PlPoly *p);

// Degree, or -1 for the zero polynomial and for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
int64_t pl_poly_degree(const struct PlPoly *p);

// `f∘g`.
//
// # Safety
// `f` and `g` must be live handles; `out` must be writable.
enum PlStatus pl_poly_compose(const struct PlPoly *f, const struct PlPoly *g, struct PlPoly **out);

// Cyclic class modulo `modulus >= 2`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum PlStatus pl_poly_cyclic_class(const struct PlPoly *p,
                                   uint64_t modulus,
                                   struct PlCyclicClass *out);

// Even classifier. When `witness` is non-NULL it receives the witness text
// (NULL when there is none), to be freed with [`pl_string_free`].
//
// # Safety
// `p` must be a live handle; `out` must be writable; `witness` may be NULL.
enum PlStatus pl_poly_classify_rpe(const struct PlPoly *p, enum PlCase *out, char **witness);

// Odd classifier. Case `B` is odd plus a nonzero constant, `C` the
// quadratic-of-odd shape.
//
// # Safety
// As for [`pl_poly_classify_rpe`].
enum PlStatus pl_poly_classify_rpo(const struct PlPoly *p, enum PlCase *out, char **witness);

// Whether some non-constant `f` puts `f∘p` in a cyclic class modulo the
// prime `modulus >= 3`. On a yes, `k` receives the class of `p - p(0)`.
//
// # Safety
// `p` must be a live handle; `is_cyclic` and `k` must be writable.
enum PlStatus pl_poly_right_cyclic(const struct PlPoly *p,
                                   uint64_t modulus,
                                   bool *is_cyclic,
                                   uint64_t *k);

// Parses a rational function; polynomials are accepted as `p / 1`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PlStatus pl_rational_parse(const char *text, struct PlRational **out);

// # Safety
// `f` must be NULL or a handle from this library not yet freed.
void pl_rational_free(struct PlRational *f);

// Canonical `(P) / (Q)` text, or NULL if `f` is NULL.
//
// # Safety
// `f` must be NULL or a live handle.
char *pl_rational_to_string(const struct PlRational *f);

// `f∘g` in lowest terms.
//
// # Safety
// `f` and `g` must be live handles; `out` must be writable.
enum PlStatus pl_rational_compose(const struct PlRational *f,
                                  const struct PlRational *g,
                                  struct PlRational **out);

// # Safety
// `f` must be a live handle; `out` must be writable.
enum PlStatus pl_rational_cyclic_class(const struct PlRational *f,
                                       uint64_t modulus,
                                       struct PlCyclicClass *out);

// Parses a polynomial in `z` and `w`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PlStatus pl_bipoly_parse(const char *text, struct PlBiPoly **out);

// # Safety
// `p` must be NULL or a handle from this library not yet freed.
void pl_bipoly_free(struct PlBiPoly *p);

// # Safety
// `p` must be NULL or a live handle.
char *pl_bipoly_to_string(const struct PlBiPoly *p);

// Even in the sense `P(-z, -w) = P(z, w)`. False for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
bool pl_bipoly_is_even(const struct PlBiPoly *p);

// `P(z, w) = P(w, z)`. False for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
bool pl_bipoly_is_symmetric(const struct PlBiPoly *p);

// `P(q(z), r(z))`.
//
// # Safety
// All handles must be live; `out` must be writable.
enum PlStatus pl_bipoly_subst(const struct PlBiPoly *p,
                              const struct PlPoly *q,
                              const struct PlPoly *r,
                              struct PlPoly **out);

// Runs a command-line invocation (`argv[0]` is the program name) and
// returns its exit code. `out` and `err` receive the printed text, to be
// freed with [`pl_string_free`]; either may be NULL to discard it. Returns
// -1 when the arguments themselves are invalid.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings.
int pl_run_command(int argc, const char *const *argv, char **out, char **err);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARITY_LAB_H */
