#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace blocksieve {

struct block_decomposition {
    // Each block sorted ascending; blocks ordered by (least vertex, size,
    // lexicographic vertex list) so reports and canonical forms reproduce.
    std::vector<vertex_set> blocks;
    // Articulation vertices, plus the single vertex of every one-vertex
    // component (that vertex counts as a cut vertex by convention).
    vertex_set cut_vertices;
    std::map<std::pair<vertex_id, vertex_id>, std::size_t> edge_block; // key (min,max)
    std::map<vertex_id, std::vector<std::size_t>> containing_blocks;

    bool is_cut(vertex_id v) const;
    // Index of the block whose vertex set equals `vs`, if any.
    std::optional<std::size_t> find_block(const vertex_set& vs) const;
};

block_decomposition decompose_blocks(const graph& g);

bool is_2connected(const graph& g);

enum class node_color { white, black };

struct tree_node {
    node_color color = node_color::white;
    std::optional<vertex_set> block;     // set when the node stands for a block
    std::optional<vertex_id> cut_vertex; // set when the node stands for a cut vertex
    std::optional<std::string> label;    // opaque; participates in canonical codes
};

struct colored_tree {
    std::vector<tree_node> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::vector<std::vector<std::size_t>> adjacency() const;
};

// Blocks as white nodes, cut vertices as black nodes, edges by containment.
// Requires a connected graph; K1 yields a single black node.
colored_tree block_tree(const graph& g);

// Intersection graph of the blocks; vertex i of the result is block i of the
// decomposition. Requires a connected graph.
graph block_graph(const graph& g);

// True iff every block induces a complete graph.
bool is_block_graph(const graph& g);

struct anchor {
    enum class kind_t { cut_vertex, block };
    kind_t kind = kind_t::cut_vertex;
    vertex_set vertices;

    friend bool operator==(const anchor&, const anchor&) = default;
};

// Throws invalid_anchor unless `a` is a cut vertex singleton or exactly a
// block of g (per the given decomposition).
void check_anchor(const graph& g, const block_decomposition& d, const anchor& a);

// Maps an anchor of g to the anchor it induces in block_graph(g):
//   cut vertex r        -> the block of B(g) formed by the blocks containing r
//   block, >=2 cut vtxs -> that block's node, as a cut vertex of B(g)
//   block, ==1 cut vtx  -> the unique block of B(g) containing that node
//   block, no cut vtxs  -> the whole (single-vertex) block graph
// g must be connected and have at least one block (so K1 is rejected).
anchor block_graph_anchor(const graph& g, const anchor& a);

} // namespace blocksieve
