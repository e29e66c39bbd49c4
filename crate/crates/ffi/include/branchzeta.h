#ifndef BRANCHZETA_H
#define BRANCHZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum BzStatus {
  BZ_STATUS_OK = 0,
  BZ_STATUS_NULL_POINTER = 1,
  BZ_STATUS_INVALID_UTF8 = 2,
  BZ_STATUS_INVALID_INPUT = 3,
  BZ_STATUS_NOT_COPRIME = 4,
  BZ_STATUS_REDUNDANT_GENERATOR = 5,
  BZ_STATUS_ORDER_VIOLATION = 6,
  BZ_STATUS_NOT_REPRESENTABLE = 7,
  BZ_STATUS_DUAL_LEVEL = 8,
  BZ_STATUS_OUT_OF_RANGE = 9,
  BZ_STATUS_INTERNAL = 10,
  BZ_STATUS_PANIC = 11,
} BzStatus;

/*
 Invariants available through `bz_branch_invariant`.
 */
typedef enum BzInvariant {
  BZ_INVARIANT_POINCARE = 0,
  BZ_INVARIANT_ORBIT = 1,
  BZ_INVARIANT_Z_TILDE = 2,
  BZ_INVARIANT_Z_MONODROMY = 3,
  BZ_INVARIANT_EGZ_RHS = 4,
} BzInvariant;

/*
 Identities available through `bz_branch_verify`.
 */
typedef enum BzCheck {
  BZ_CHECK_CDG = 0,
  BZ_CHECK_EGZ = 1,
  BZ_CHECK_PROPJAN = 2,
  BZ_CHECK_LEMMA1 = 3,
} BzCheck;

/*
 Opaque validated semigroup.
 */
typedef struct BzBranch BzBranch;

/*
 Opaque product of factors `(1 - T^l)^a`.
 */
typedef struct BzCyclo BzCyclo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread (empty after success).
 The pointer stays valid until the next call into the library on the same
 thread.
 */
const char *bz_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void bz_string_free(char *s);

/*
 Validates the generators `gens[0..len]` and returns a branch handle.

 # Safety
 `gens` must point to `len` readable values; `out` must be writable.
 */
enum BzStatus bz_branch_new(const uint64_t *gens, size_t len, struct BzBranch **out);

/*
 # Safety
 `branch` must be null or a handle from `bz_branch_new` not yet freed.
 */
void bz_branch_free(struct BzBranch *branch);

/*
 Number of characteristic pairs, 0 for a null handle.

 # Safety
 `branch` must be null or a live handle.
 */
size_t bz_branch_g(const struct BzBranch *branch);

/*
 # Safety
 `branch` must be null or a live handle.
 */
uint64_t bz_branch_conductor(const struct BzBranch *branch);

/*
 # Safety
 `branch` must be null or a live handle.
 */
uint64_t bz_branch_delta(const struct BzBranch *branch);

/*
 Structure constants as JSON (`beta`, `e`, `n`, `d`, `L`, `conductor`, `delta`).

 # Safety
 `branch` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_branch_to_json(const struct BzBranch *branch, char **out);

/*
 # Safety
 `branch` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_branch_invariant(const struct BzBranch *branch,
                                  enum BzInvariant which,
                                  struct BzCyclo **out);

/*
 Relative zeta function `zeta~_j`, `1 <= j <= g`.

 # Safety
 `branch` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_branch_zeta_tilde(const struct BzBranch *branch, size_t j, struct BzCyclo **out);

/*
 Saito dual of `zeta~_j` at the level `d_j`, `1 <= j <= g`.

 # Safety
 `branch` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_branch_dual(const struct BzBranch *branch, size_t j, struct BzCyclo **out);

/*
 Runs one identity check; `*holds` receives the verdict.

 # Safety
 `branch` must be a live handle; `holds` must be writable.
 */
enum BzStatus bz_branch_verify(const struct BzBranch *branch, enum BzCheck check, bool *holds);

/*
 Monomial equations and eliminated plane-curve equation, in the JSON shape
 of the `equations` CLI command. Needs `g >= 1`.

 # Safety
 `branch` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_branch_equations_json(const struct BzBranch *branch, char **out);

/*
 The constant product 1.

 # Safety
 `out` must be writable.
 */
enum BzStatus bz_cyclo_one(struct BzCyclo **out);

/*
 `(1 - T^l)^a`; `l` must be at least 1.

 # Safety
 `out` must be writable.
 */
enum BzStatus bz_cyclo_factor(uint64_t l, int64_t a, struct BzCyclo **out);

/*
 Parses `{"factors": [[l, a], ...]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum BzStatus bz_cyclo_from_json(const char *json, struct BzCyclo **out);

/*
 # Safety
 `cyclo` must be null or a live handle.
 */
void bz_cyclo_free(struct BzCyclo *cyclo);

/*
 # Safety
 `a`, `b` must be live handles; `out` must be writable.
 */
enum BzStatus bz_cyclo_mul(const struct BzCyclo *a, const struct BzCyclo *b, struct BzCyclo **out);

/*
 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_inv(const struct BzCyclo *a, struct BzCyclo **out);

/*
 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_pow(const struct BzCyclo *a, int64_t k, struct BzCyclo **out);

/*
 `T -> T^k`, `k >= 1`.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_substitute(const struct BzCyclo *a, uint64_t k, struct BzCyclo **out);

/*
 Saito dual at level `d`; fails with `BZ_STATUS_DUAL_LEVEL` when some cycle
 length does not divide `d`.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_saito_dual(const struct BzCyclo *a, uint64_t d, struct BzCyclo **out);

/*
 Structural equality; false if either handle is null.

 # Safety
 `a`, `b` must be null or live handles.
 */
bool bz_cyclo_equal(const struct BzCyclo *a, const struct BzCyclo *b);

/*
 `{"factors": [[l, a], ...]}` with `l` ascending.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_to_json(const struct BzCyclo *a, char **out);

/*
 Human-readable form such as `(1-T^6)/((1-T^2)(1-T^3))`.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_to_string(const struct BzCyclo *a, char **out);

/*
 Expansion through `T^order` as `{"order": N, "coeffs": ["1", ...]}`.

 # Safety
 `a` must be a live handle; `out` must be writable.
 */
enum BzStatus bz_cyclo_expand_json(const struct BzCyclo *a, size_t order, char **out);

/*
 Zeta function from Lefschetz numbers, homology maps or point counts; same
 JSON input and output as the `lefschetz` CLI command.

 # Safety
 `input` must be a NUL-terminated string; `out` must be writable.
 */
enum BzStatus bz_lefschetz_json(const char *input, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRANCHZETA_H */
