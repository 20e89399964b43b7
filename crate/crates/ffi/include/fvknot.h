#ifndef FVKNOT_H
#define FVKNOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The nonzero values match the `fvknot` CLI exit codes where
 * both exist.
 */
typedef enum FvkStatus {
  FVK_STATUS_OK = 0,
  FVK_STATUS_PARSE = 2,
  FVK_STATUS_INVALID = 3,
  FVK_STATUS_CAP = 4,
  FVK_STATUS_GENERICITY = 5,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  FVK_STATUS_ARGUMENT = 6,
  /**
   * The library panicked; this is a bug.
   */
  FVK_STATUS_INTERNAL = 7,
} FvkStatus;

/**
 * Opaque diagram handle.
 */
typedef struct FvkDiagram FvkDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *fvk_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fvk_string_free(char *s);

/**
 * Parses and validates a diagram in the text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum FvkStatus fvk_diagram_parse(const char *text, struct FvkDiagram **out);

/**
 * Releases a diagram. Null is ignored.
 *
 * # Safety
 * `d` must come from this library and not have been freed.
 */
void fvk_diagram_free(struct FvkDiagram *d);

/**
 * Writes the diagram in the text format.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum FvkStatus fvk_diagram_serialize(const struct FvkDiagram *d, char **out);

/**
 * Computes X(D) as text, refusing diagrams with more than `cap` classical
 * crossings. `workers` of 0 means one thread.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum FvkStatus fvk_diagram_invariant(const struct FvkDiagram *d,
                                     size_t cap,
                                     uint32_t workers,
                                     char **out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum FvkStatus fvk_diagram_writhe(const struct FvkDiagram *d, int32_t *out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum FvkStatus fvk_diagram_components(const struct FvkDiagram *d, size_t *out);

/**
 * Numbers of classical and flat crossings.
 *
 * # Safety
 * `d` must be a live handle; both outputs must be writable.
 */
enum FvkStatus fvk_diagram_crossings(const struct FvkDiagram *d, size_t *classical, size_t *flat);

/**
 * New diagram with every classical crossing made flat.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum FvkStatus fvk_diagram_forget(const struct FvkDiagram *d, struct FvkDiagram **out);

/**
 * Builds the flat-virtual diagram of a curve file. `restricted_eligible`
 * may be null.
 *
 * # Safety
 * `curve_text` must be a nul-terminated string; `out` must be writable.
 */
enum FvkStatus fvk_phi(const char *curve_text, struct FvkDiagram **out, bool *restricted_eligible);

/**
 * Runs `trials` random move sequences and stores the number that changed
 * X or broke the diagram.
 *
 * # Safety
 * `violations` must be writable.
 */
enum FvkStatus fvk_fuzz(uint64_t seed,
                        size_t trials,
                        size_t steps,
                        size_t max_crossings,
                        bool restricted,
                        size_t *violations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FVKNOT_H */
