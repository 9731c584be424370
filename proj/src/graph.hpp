#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "int_matrix.hpp"
#include "vertex_id.hpp"

namespace blocksieve {

// Finite simple graph with stable, totally ordered vertex identities.
// Immutable once built; all operations on it are pure functions, so values
// can be shared across threads freely.
class graph {
public:
    graph() = default;

    // Throws invalid_argument on duplicate vertices, loops, or edges whose
    // endpoints are not listed.
    static graph from_edges(std::vector<vertex_id> vertices,
                            const std::vector<std::pair<vertex_id, vertex_id>>& edges);

    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    // Sorted ascending; every index-based accessor follows this order.
    const std::vector<vertex_id>& vertices() const { return verts_; }

    bool has_vertex(vertex_id v) const;
    std::size_t index_of(vertex_id v) const; // throws unknown_vertex
    vertex_id vertex_at(std::size_t i) const { return verts_[i]; }

    bool adjacent_at(std::size_t i, std::size_t j) const { return adj_[i * verts_.size() + j]; }
    bool adjacent(vertex_id u, vertex_id v) const;
    const std::vector<std::size_t>& neighbors_at(std::size_t i) const { return nbrs_[i]; }
    std::size_t degree_at(std::size_t i) const { return nbrs_[i].size(); }

    std::vector<std::pair<vertex_id, vertex_id>> edges() const; // (min,max) pairs, sorted
    graph complement() const;

    friend bool operator==(const graph&, const graph&) = default;

private:
    std::vector<vertex_id> verts_;
    std::vector<char> adj_;
    std::vector<std::vector<std::size_t>> nbrs_;
    std::size_t edge_count_ = 0;
};

using vertex_set = std::vector<vertex_id>; // sorted ascending

int_matrix adjacency_matrix(const graph& g);

// Partition of V(g) into maximal connected pieces, ordered by least vertex,
// each piece sorted.
std::vector<vertex_set> connected_components(const graph& g);

// nullopt encodes an infinite distance (different components).
using distance_value = std::optional<std::int64_t>;
std::vector<std::vector<distance_value>> distance_matrix(const graph& g);
distance_value eccentricity(const graph& g, vertex_id v);

// Minimum-eccentricity vertices; requires a connected graph.
vertex_set center(const graph& g);

graph induced_subgraph(const graph& g, std::span<const vertex_id> keep);

struct union_result {
    graph g;
    // new id -> (input index, id in that input)
    std::map<vertex_id, std::pair<std::size_t, vertex_id>> provenance;
};

// Re-namespaces every input: vertex j (in sorted order) of input i becomes (i, j).
union_result disjoint_union(std::span<const graph> parts);

// Entry i is Adj(g)^i; entry 0 is the identity.
std::vector<int_matrix> walk_count_tensor(const graph& g, std::size_t max_len);

} // namespace blocksieve
