/* blocksieve C API: block structure decomposition and quantum-isomorphism
 * refutation for finite simple graphs.
 *
 * All objects are opaque handles owned by the library; every function that
 * can fail returns a bs_status, with a human-readable message available from
 * bs_last_error() until the next failing call on the same thread. Strings
 * returned through char** are heap-allocated; release them with
 * bs_string_free.
 */
#ifndef BLOCKSIEVE_H
#define BLOCKSIEVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
    BS_OK = 0,
    BS_ERR_PARSE = 1,
    BS_ERR_UNKNOWN_VERTEX = 2,
    BS_ERR_DISCONNECTED = 3,
    BS_ERR_INVALID_ANCHOR = 4,
    BS_ERR_NOT_CUT_VERTEX = 5,
    BS_ERR_DIMENSION = 6,
    BS_ERR_NOT_BIJECTIVE = 7,
    BS_ERR_PRECONDITION = 8,
    BS_ERR_INVALID_ARGUMENT = 9,
    BS_ERR_IO = 10,
    BS_ERR_INTERNAL = 11
} bs_status;

typedef enum bs_verdict {
    BS_VERDICT_ISO = 0,
    BS_VERDICT_NOT_QI = 1,
    BS_VERDICT_UNKNOWN = 2
} bs_verdict;

typedef struct bs_graph bs_graph;
typedef struct bs_magic_unitary bs_magic_unitary;

const char* bs_version(void);

/* Message for the most recent failing call on this thread. */
const char* bs_last_error(void);

void bs_string_free(char* s);

/* format: "graph6", "edgelist", "structured" (alias "structured-text"), or
 * "auto". */
bs_status bs_graph_parse(const char* text, const char* format, bs_graph** out);
void bs_graph_free(bs_graph* g);
size_t bs_graph_vertex_count(const bs_graph* g);
size_t bs_graph_edge_count(const bs_graph* g);
bs_status bs_graph_write(const bs_graph* g, const char* format, char** out);

/* Decomposition report (JSON) and the block-tree/forest drawing (DOT). */
bs_status bs_blocks_json(const bs_graph* g, char** out);
bs_status bs_blocks_human(const bs_graph* g, char** out);
bs_status bs_block_tree_dot(const bs_graph* g, char** out);

/* One anchored decomposition step. anchor_spec is
 * "cut:<id>" | "block:<id,...>" | "zbar"; human != 0 selects the text report
 * instead of JSON. */
bs_status bs_gamma_report(const bs_graph* g, const char* anchor_spec, int human, char** out);

/* Sound three-valued comparison; verdict receives a bs_verdict value.
 * max_walk_len caps the walk-profile length (0 = up to the vertex count). */
bs_status bs_sieve_run(const bs_graph* g, const bs_graph* h, size_t max_walk_len, int human,
                       char** report, int* verdict);

/* tolerance_override > 0 replaces the tolerance stored in the document. */
bs_status bs_mu_parse(const char* text, double tolerance_override, bs_magic_unitary** out);
void bs_mu_free(bs_magic_unitary* u);
bs_status bs_mu_write(const bs_magic_unitary* u, char** out);

/* Residual table for the magic-unitary axioms and the intertwining relation;
 * pass receives 0/1. */
bs_status bs_mu_verify(const bs_magic_unitary* u, const bs_graph* g, const bs_graph* h,
                       int human, char** report, int* pass);

/* Transports u along the anchored decomposition of (g, anchor_g) and
 * (h, anchor_h); the result indexes the decomposed graphs, split copies
 * included, and re-verifies against them. */
bs_status bs_mu_transport(const bs_magic_unitary* u, const bs_graph* g, const char* anchor_g,
                          const bs_graph* h, const char* anchor_h, bs_magic_unitary** out);

#ifdef __cplusplus
}
#endif

#endif /* BLOCKSIEVE_H */
