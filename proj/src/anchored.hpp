#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blocks.hpp"
#include "graph.hpp"

namespace blocksieve {

// A graph together with a distinguished vertex set that meets every
// connected component in either a single cut vertex or a whole block.
struct anchored_graph {
    graph g;
    vertex_set anchor_vertices; // sorted
};

// Validates the component law; the error names the offending component by
// its least vertex.
anchored_graph make_anchored(graph g, vertex_set r);

struct component_anchor {
    vertex_set component;
    anchor a;
};

// Per-component view of the anchor, components ordered by least vertex.
std::vector<component_anchor> component_anchors(const anchored_graph& ag);

// {v} when v is a cut vertex or isolated, else the unique block containing v.
vertex_set induced_anchor(const graph& g, vertex_id v);
vertex_set induced_anchor(const block_decomposition& d, vertex_id v);

// The center if it is a lone cut vertex, otherwise the unique block
// containing the center. (g, result) is always a valid anchored graph.
anchor center_anchor(const graph& g);

struct split_result {
    graph g;
    std::vector<vertex_id> copies;            // copy of r in component i, ascending
    std::vector<vertex_set> component_cells;  // cells of g \ r, ordered by least vertex
};

// Disjoint union over the components C_i of g \ r of the graphs induced on
// C_i + r, with the i-th copy of r renamed into a fresh namespace. K1 is
// returned unchanged. r must be a cut vertex.
split_result split_at(const graph& g, vertex_id r);

// One decomposition step: split at a cut-vertex anchor, or drop all edges
// inside a block anchor; the new anchor collects the induced anchors of the
// copies (resp. of the old anchor's vertices). Every component of the result
// has strictly fewer blocks whenever the input has at least one.
anchored_graph peel(const anchored_graph& ag);

struct rooted_tree {
    colored_tree tree;
    std::size_t root = 0;
};

// Block tree rooted at the node the anchor names (black for a cut vertex,
// white for a block). Requires a connected anchored graph.
rooted_tree rooted_block_tree(const anchored_graph& ag);

// Joins white-rooted trees under a fresh black root.
rooted_tree join_trees_at_cut(std::span<const rooted_tree> trees);

// Joins trees under a fresh white root: white roots get an interposed fresh
// black vertex, black-rooted trees with at least two nodes attach directly,
// single black nodes are dropped.
rooted_tree join_trees_at_block(std::span<const rooted_tree> trees);

// Rebuilds the rooted block tree of (g, R) from the rooted block trees of
// the components of peel(g, R). Requires a connected input on >= 2 vertices;
// the result is isomorphic to rooted_block_tree(ag) as a rooted colored tree.
rooted_tree reconstruct_block_tree(const anchored_graph& ag);

} // namespace blocksieve
