#ifndef KELLER_H
#define KELLER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KellerStatus {
  KELLER_STATUS_OK = 0,
  KELLER_STATUS_NULL_POINTER = 1,
  KELLER_STATUS_INVALID_UTF8 = 2,
  KELLER_STATUS_PARSE_ERROR = 3,
  KELLER_STATUS_INVALID_RING = 4,
  KELLER_STATUS_RING_MISMATCH = 5,
  /*
   Input outside an operation's domain (zero, constant, wrong arity, ...).
   */
  KELLER_STATUS_DOMAIN_ERROR = 6,
  KELLER_STATUS_PANIC = 7,
} KellerStatus;

/*
 Opaque polynomial handle.
 */
typedef struct KellerPoly KellerPoly;

/*
 Opaque polynomial ring handle.
 */
typedef struct KellerRing KellerRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or null. Valid until
 the next failing call on the same thread.
 */
const char *keller_last_error(void);

/*
 Creates a ring from comma-separated variable names (graded lex order).

 # Safety
 `vars` must be a valid NUL-terminated string; `out` must be writable.
 */
enum KellerStatus keller_ring_new(const char *vars, struct KellerRing **out);

/*
 # Safety
 `ring` must come from `keller_ring_new` and not be freed twice.
 */
void keller_ring_free(struct KellerRing *ring);

/*
 # Safety
 `ring` must be a live ring handle.
 */
size_t keller_ring_nvars(const struct KellerRing *ring);

/*
 # Safety
 `ring` must be a live handle, `source` a NUL-terminated string, `out` writable.
 */
enum KellerStatus keller_poly_parse(const struct KellerRing *ring,
                                    const char *source,
                                    struct KellerPoly **out);

/*
 # Safety
 `poly` must come from this library and not be freed twice.
 */
void keller_poly_free(struct KellerPoly *poly);

/*
 Canonical text form; release with `keller_string_free`.

 # Safety
 `poly` must be a live handle and `out` writable.
 */
enum KellerStatus keller_poly_to_string(const struct KellerPoly *poly, char **out);

/*
 # Safety
 `s` must come from this library and not be freed twice.
 */
void keller_string_free(char *s);

/*
 # Safety
 `poly` must be a live handle and `out` writable.
 */
enum KellerStatus keller_poly_is_squarefree(const struct KellerPoly *poly, bool *out);

/*
 # Safety
 `poly` must be a live handle and `out` writable.
 */
enum KellerStatus keller_poly_is_irreducible(const struct KellerPoly *poly, bool *out);

/*
 Normalized gcd as a new handle.

 # Safety
 `a`, `b` must be live handles over the same ring; `out` writable.
 */
enum KellerStatus keller_poly_gcd(const struct KellerPoly *a,
                                  const struct KellerPoly *b,
                                  struct KellerPoly **out);

/*
 Irreducible factorization as JSON `{"unit": .., "factors": [[p, e], ..]}`.

 # Safety
 `poly` must be a live handle and `out` writable.
 */
enum KellerStatus keller_poly_factor_json(const struct KellerPoly *poly, char **out);

/*
 Whether the Jacobian determinant of the `count` polynomials is a nonzero constant.

 # Safety
 `polys` must point to `count` live handles over one ring; `out` writable.
 */
enum KellerStatus keller_is_keller(const struct KellerPoly *const *polys, size_t count, bool *out);

/*
 Differential gcd of the maximal Jacobian minors.

 # Safety
 `polys` must point to `count` live handles over one ring; outputs writable.
 */
enum KellerStatus keller_dgcd(const struct KellerPoly *const *polys,
                              size_t count,
                              struct KellerPoly **out_value,
                              bool *out_is_constant);

/*
 Irreducible-witness search for `g^2 | w(f)`; writes the result and its
 divisibility certificate (if any) as JSON.

 # Safety
 `polys` must point to `count` live handles; `g` live over the same ring;
 `out` writable.
 */
enum KellerStatus keller_witness_search_json(const struct KellerPoly *const *polys,
                                             size_t count,
                                             const struct KellerPoly *g,
                                             uint32_t max_degree,
                                             char **out);

/*
 Re-verifies a JSON certificate offline.

 # Safety
 `json` must be a NUL-terminated string and `out` writable.
 */
enum KellerStatus keller_certificate_verify_json(const char *json, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KELLER_H */
