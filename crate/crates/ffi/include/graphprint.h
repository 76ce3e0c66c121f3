#ifndef GRAPHPRINT_H
#define GRAPHPRINT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpStatus {
  GP_STATUS_OK = 0,
  GP_STATUS_NULL_POINTER = 1,
  GP_STATUS_UTF8 = 2,
  GP_STATUS_PARSE = 3,
  GP_STATUS_INVALID_ARGUMENT = 4,
  GP_STATUS_UNSUPPORTED = 5,
  GP_STATUS_NODE_OUT_OF_RANGE = 6,
  GP_STATUS_BOUND_EXCEEDED = 7,
  GP_STATUS_STORE = 8,
  GP_STATUS_IO = 9,
  GP_STATUS_PANIC = 10,
} GpStatus;

typedef enum GpFormat {
  GP_FORMAT_GRAPH6 = 0,
  GP_FORMAT_SPARSE6 = 1,
  GP_FORMAT_EDGELIST = 2,
} GpFormat;

typedef enum GpFamily {
  GP_FAMILY_S = 0,
  GP_FAMILY_T = 1,
} GpFamily;

typedef enum GpMode {
  GP_MODE_EXACT = 0,
  GP_MODE_HASHED = 1,
} GpMode;

// Opaque graph handle.
typedef struct GpGraph GpGraph;

// Opaque read-only view of an index store.
typedef struct GpIndex GpIndex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next call into the library on this thread.
const char *gp_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gp_string_free(char *s);

// Creates an edgeless graph on `n` nodes.
//
// # Safety
// `out` must be valid for a pointer write.
enum GpStatus gp_graph_new(size_t n, struct GpGraph **out);

// Parses one graph from a nul-terminated string.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be valid for a
// pointer write.
enum GpStatus gp_graph_parse(const char *text, enum GpFormat format, struct GpGraph **out);

// Adds the edge `{i, j}` (a loop if `i == j`). Adding an existing edge is
// not an error.
//
// # Safety
// `g` must be a live graph handle.
enum GpStatus gp_graph_add_edge(struct GpGraph *g, size_t i, size_t j);

// Node count, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live graph handle.
size_t gp_graph_node_count(const struct GpGraph *g);

// Edge count including loops, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live graph handle.
size_t gp_graph_edge_count(const struct GpGraph *g);

// Releases a graph. NULL is ignored.
//
// # Safety
// `g` must be NULL or a live graph handle, not used afterwards.
void gp_graph_free(struct GpGraph *g);

// Fingerprint line `family k iters mode hashver digest [wide]` with the
// full iteration budget. Free the result with [`gp_string_free`].
//
// # Safety
// `g` must be a live graph handle; `out` must be valid for a pointer write.
enum GpStatus gp_fingerprint(const struct GpGraph *g,
                             enum GpFamily family,
                             size_t k,
                             enum GpMode mode,
                             bool wide,
                             char **out);

// Exact `s^k` / `t^k` equivalence.
//
// # Safety
// `g1`, `g2` must be live graph handles; `out` must be valid for a write.
enum GpStatus gp_equivalent(const struct GpGraph *g1,
                            const struct GpGraph *g2,
                            enum GpFamily family,
                            size_t k,
                            bool *out);

// Walk-label equivalence.
//
// # Safety
// `g1`, `g2` must be live graph handles; `out` must be valid for a write.
enum GpStatus gp_w_equivalent(const struct GpGraph *g1, const struct GpGraph *g2, bool *out);

// Opens an existing index store read-only.
//
// # Safety
// `path` must be a nul-terminated string; `out` must be valid for a write.
enum GpStatus gp_index_open(const char *path, struct GpIndex **out);

// Number of records, or 0 for NULL.
//
// # Safety
// `idx` must be NULL or a live index handle.
size_t gp_index_len(const struct GpIndex *idx);

// Candidate ids for a fingerprint line, newline-separated (empty string
// if none). Free the result with [`gp_string_free`].
//
// # Safety
// `idx` must be a live index handle; `line` a nul-terminated string;
// `out` valid for a pointer write.
enum GpStatus gp_index_query(const struct GpIndex *idx, const char *line, char **out);

// Releases an index handle. NULL is ignored.
//
// # Safety
// `idx` must be NULL or a live index handle, not used afterwards.
void gp_index_free(struct GpIndex *idx);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHPRINT_H */
