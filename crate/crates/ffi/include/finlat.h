#ifndef FINLAT_H
#define FINLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Result codes. The nonzero codes match the `finlat` command's exit codes
 * where one exists.
 */
typedef enum FlStatus {
  FL_STATUS_OK = 0,
  FL_STATUS_NOT_A_LATTICE = 1,
  FL_STATUS_INVALID_INPUT = 2,
  FL_STATUS_PRECONDITION_FAILED = 3,
  FL_STATUS_CAP_EXCEEDED = 4,
  FL_STATUS_CERTIFICATE = 5,
  FL_STATUS_NULL_POINTER = 6,
  FL_STATUS_PANIC = 7,
} FlStatus;

/**
 * A validated finite lattice.
 */
typedef struct FlLattice FlLattice;

/**
 * A validated finite poset.
 */
typedef struct FlPoset FlPoset;

/**
 * Parses a poset from text. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FlStatus fl_poset_parse(const char *text, struct FlPoset **out);

/**
 * # Safety
 * `p` must come from `fl_poset_parse` and not be freed twice. Null is ignored.
 */
void fl_poset_free(struct FlPoset *p);

/**
 * Parses a lattice from text. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FlStatus fl_lattice_parse(const char *text, struct FlLattice **out);

/**
 * # Safety
 * `l` must come from `fl_lattice_parse` and not be freed twice. Null is ignored.
 */
void fl_lattice_free(struct FlLattice *l);

/**
 * Number of elements.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_poset_len(const struct FlPoset *p, size_t *out);

/**
 * Number of up-sets.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_poset_upset_count(const struct FlPoset *p, size_t *out);

/**
 * All up-sets, one `{a,b}` label per line, in enumeration order. Release
 * the string with `fl_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_poset_upsets(const struct FlPoset *p, char **out);

/**
 * Number of elements.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_lattice_len(const struct FlLattice *l, size_t *out);

/**
 * Whether the lattice is distributive.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_lattice_is_distributive(const struct FlLattice *l, bool *out);

/**
 * Whether the lattice is isomorphic to the up-sets of its meet-irreducibles.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_lattice_is_representable(const struct FlLattice *l, bool *out);

/**
 * Whether `l0` embeds into `l` keeping meets, joins, bottom and top. Both
 * must be representable.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_decide_embedding(const struct FlLattice *l0, const struct FlLattice *l, bool *out);

/**
 * Number of monotonic-operator classes on the meet-irreducibles of a
 * distributive lattice.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FlStatus fl_class_count(const struct FlLattice *l, size_t *out);

/**
 * Message for the last failure on this thread, or null. Release with
 * `fl_string_free`.
 */
char *fl_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void fl_string_free(char *s);

#endif  /* FINLAT_H */
