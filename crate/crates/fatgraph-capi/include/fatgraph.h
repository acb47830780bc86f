#ifndef FATGRAPH_H
#define FATGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_ARGUMENT = 1,
  FG_STATUS_INVALID_UTF8 = 2,
  FG_STATUS_PARSE_ERROR = 3,
  FG_STATUS_INVALID_GRAPH = 4,
  FG_STATUS_BAD_EDGE = 5,
  FG_STATUS_BUFFER_TOO_SMALL = 6,
  FG_STATUS_UNSUPPORTED = 7,
  FG_STATUS_INTERNAL_ERROR = 8,
} FgStatus;

/**
 * Opaque spine handle.
 */
typedef struct FgGraph FgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *fg_last_error(void);

/**
 * Parse a spine from `fatgraph v1` text. On success stores a new handle
 * in `out`; free it with `fg_free`.
 * # Safety
 * `text` must point at a NUL-terminated string and `out` at a valid
 * pointer slot.
 */
enum FgStatus fg_parse(const char *text, struct FgGraph **out);

/**
 * Release a handle returned by this library.
 *
 * # Safety
 * `graph` must be a pointer from `fg_parse` or `fg_flip` that has not
 * been freed yet; null is ignored.
 */
void fg_free(struct FgGraph *graph);

/**
 * Validate a spine; on success writes genus, vertex count and edge
 * count through the out pointers (any of which may be null).
 * # Safety
 * `graph` must be a live handle from this library; out pointers must
 * be valid or null.
 */
enum FgStatus fg_validate(const struct FgGraph *graph,
                          size_t *genus,
                          size_t *vertices,
                          size_t *edges);

/**
 * 1 for bordered spines, 0 for punctured.
 * # Safety
 * `graph` must be a live handle; `out` must be a valid pointer.
 */
enum FgStatus fg_is_bordered(const struct FgGraph *graph, int *out);

/**
 * Serialize a spine into `fatgraph v1` text. Call with a null `buf` to
 * query the needed length (including the terminator).
 * # Safety
 * `graph` must be a live handle; `buf` must hold `cap` bytes when not
 * null; `len` must be valid or null.
 */
enum FgStatus fg_serialize(const struct FgGraph *graph, char *buf, size_t cap, size_t *len);

/**
 * Canonical form: equal strings exactly when the spines are isomorphic
 * (tail-preserving for bordered spines).
 * # Safety
 * `graph` must be a live handle; `buf` must hold `cap` bytes when not
 * null; `len` must be valid or null.
 */
enum FgStatus fg_canonical(const struct FgGraph *graph, char *buf, size_t cap, size_t *len);

/**
 * Flip an edge, producing a new handle.
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer slot.
 */
enum FgStatus fg_flip(const struct FgGraph *graph, size_t edge, struct FgGraph **out);

/**
 * The homology-valued invariant of a bordered spine, written as `rank`
 * signed coordinates. Call with null `coords` to query the rank.
 * # Safety
 * `graph` must be a live handle; `coords` must hold `cap` values when
 * not null; `rank` must be valid or null.
 */
enum FgStatus fg_xi(const struct FgGraph *graph, int64_t *coords, size_t cap, size_t *rank);

/**
 * The punctured invariant's pairing vector against the canonical cycle
 * basis.
 * # Safety
 * `graph` must be a live handle; `pairings` must hold `cap` values
 * when not null; `rank` must be valid or null.
 */
enum FgStatus fg_xi_punctured(const struct FgGraph *graph,
                              int64_t *pairings,
                              size_t cap,
                              size_t *rank);

/**
 * Number of isomorphism classes at the given genus (1..=3).
 * `bordered` selects the spine kind.
 * # Safety
 * `out` must be a valid pointer.
 */
enum FgStatus fg_count_classes(size_t genus, int bordered, size_t *out);

/**
 * Head vertex of a dart, for callers walking the structure.
 * # Safety
 * `graph` must be a live handle; `out` must be a valid pointer.
 */
enum FgStatus fg_dart_head(const struct FgGraph *graph, size_t dart, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FATGRAPH_H */
