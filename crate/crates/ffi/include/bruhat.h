#ifndef BRUHAT_H
#define BRUHAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum BhStatus {
  BH_STATUS_OK = 0,
  BH_STATUS_NULL_POINTER = 1,
  // Malformed matrix, type name, word or letter.
  BH_STATUS_INVALID_ARGUMENT = 2,
  // Group size, braid closure or face budget exceeded.
  BH_STATUS_LIMIT_EXCEEDED = 3,
  // Inputs well formed but outside the operation's domain.
  BH_STATUS_PRECONDITION = 4,
  // Output buffer too short; the needed length is still written.
  BH_STATUS_BUFFER_TOO_SMALL = 5,
  // Internal panic, caught at the boundary.
  BH_STATUS_PANIC = 6,
} BhStatus;

typedef enum BhClassification {
  BH_CLASSIFICATION_BALL = 0,
  BH_CLASSIFICATION_SPHERE = 1,
} BhClassification;

// Opaque group element. Only meaningful with the system that made it.
typedef struct BhElement BhElement;

// Opaque finite Coxeter system.
typedef struct BhSystem BhSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until
// the next failing call on the same thread.
const char *bh_last_error(void);

// Named system such as `"A3"`, `"B2"`, `"I2:5"` or `"H3"`.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum BhStatus bh_system_new_named(const char *name, struct BhSystem **out_system);

// System from an `n x n` row-major Coxeter matrix, enumerating at most
// `size_cap` elements (0 picks the default of 50000). Entries below 2 off
// the diagonal are rejected; an infinite group fails later, at the cap.
//
// # Safety
// `entries` must point to `n * n` values; `out` must be writable.
enum BhStatus bh_system_new_matrix(const uint32_t *entries,
                                   uintptr_t n,
                                   uintptr_t size_cap,
                                   struct BhSystem **out_system);

// # Safety
// `system` must come from a `bh_system_new_*` call, or be null.
void bh_system_free(struct BhSystem *system);

// Number of generators, or 0 for a null handle.
//
// # Safety
// `system` must be a live handle or null.
uintptr_t bh_system_rank(const struct BhSystem *system);

// Number of group elements, by enumeration.
//
// # Safety
// `system` must be a live handle; `out_order` must be writable.
enum BhStatus bh_system_order(const struct BhSystem *system, uint64_t *out_order);

// Longest element.
//
// # Safety
// `system` must be a live handle; `out_element` must be writable.
enum BhStatus bh_system_longest(const struct BhSystem *system, struct BhElement **out_element);

// Product of the generators `letters[0..len]` (1-based), in canonical form.
//
// # Safety
// `letters` must hold `len` bytes (may be null when `len` is 0).
enum BhStatus bh_element_from_word(const struct BhSystem *system,
                                   const uint8_t *letters,
                                   uintptr_t len,
                                   struct BhElement **out_element);

// # Safety
// `element` must come from this library, or be null.
void bh_element_free(struct BhElement *element);

// Coxeter length, or 0 for a null handle.
//
// # Safety
// `element` must be a live handle or null.
uintptr_t bh_element_length(const struct BhElement *element);

// Copies the lex-minimal reduced word into `buf`. `out_len` always
// receives the word length; `BH_STATUS_BUFFER_TOO_SMALL` if `cap` is short.
//
// # Safety
// `buf` must hold `cap` bytes (may be null when `cap` is 0).
enum BhStatus bh_element_word(const struct BhElement *element,
                              uint8_t *buf,
                              uintptr_t cap,
                              uintptr_t *out_len);

// Whether two handles hold the same group element.
//
// # Safety
// Both handles must be live.
enum BhStatus bh_element_equal(const struct BhElement *a,
                               const struct BhElement *b,
                               bool *out_equal);

// Demazure product of an arbitrary word.
//
// # Safety
// As for [`bh_element_from_word`].
enum BhStatus bh_demazure(const struct BhSystem *system,
                          const uint8_t *letters,
                          uintptr_t len,
                          struct BhElement **out_element);

// `u <= v` in Bruhat order.
//
// # Safety
// All handles live; `out_leq` writable.
enum BhStatus bh_bruhat_leq(const struct BhSystem *system,
                            const struct BhElement *u,
                            const struct BhElement *v,
                            bool *out_leq);

// `u <= v` in right weak order.
//
// # Safety
// All handles live; `out_leq` writable.
enum BhStatus bh_weak_leq(const struct BhSystem *system,
                          const struct BhElement *u,
                          const struct BhElement *v,
                          bool *out_leq);

// Greedy sorting subword of `u` in the reduced word `q`, as a bit mask:
// bit `k` set for position `k + 1`.
//
// # Safety
// `q` must hold `len` bytes; handles live; `out_mask` writable.
enum BhStatus bh_sorting_subword(const struct BhSystem *system,
                                 const uint8_t *q,
                                 uintptr_t len,
                                 const struct BhElement *u,
                                 uint64_t *out_mask);

// Whether the subword complex of `q` and `w` is a ball or a sphere.
// `BH_STATUS_PRECONDITION` when the complex is void.
//
// # Safety
// `q` must hold `len` bytes; handles live; `out_class` writable.
enum BhStatus bh_subword_classify(const struct BhSystem *system,
                                  const uint8_t *q,
                                  uintptr_t len,
                                  const struct BhElement *w,
                                  enum BhClassification *out_class);

// Whether the open Bruhat interval `(u, w)` has the homology of a sphere
// of dimension `l(w) - l(u) - 2` over GF(2) and Q. Needs `u < w` with a
// length gap of at least 2.
//
// # Safety
// Handles live; `out_sphere` writable.
enum BhStatus bh_interval_is_sphere(const struct BhSystem *system,
                                    const struct BhElement *u,
                                    const struct BhElement *w,
                                    bool *out_sphere);

// Runs the full verification on comma-separated groups such as
// `"A3,B2,I2:5"` and returns the JSON report. `out_passed` tells whether
// every check held. Release the string with [`bh_string_free`].
//
// # Safety
// `groups` must be nul-terminated; outputs writable.
enum BhStatus bh_verify_json(const char *groups, uint64_t seed, char **out_json, bool *out_passed);

// # Safety
// `s` must come from this library, or be null.
void bh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRUHAT_H */
