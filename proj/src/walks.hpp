#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "graph.hpp"

namespace blocksieve {

// Walk-count queries against one graph, with memoized adjacency powers.
// A single instance is not safe for concurrent use; the free functions below
// are pure and are.
class walk_counter {
public:
    explicit walk_counter(graph g) : g_(std::move(g)) {}

    const graph& underlying() const { return g_; }

    // number of length-i walks from x to y
    bigint walks(std::size_t len, vertex_id x, vertex_id y) const;

    // walks from x to z that visit y at least once; the start vertex counts
    // as a visit
    bigint walks_visiting(std::size_t len, vertex_id x, vertex_id z, vertex_id y) const;

    // walks from x to z that visit y exactly once
    bigint walks_visiting_once(std::size_t len, vertex_id x, vertex_id z, vertex_id y) const;

    // Checks the concatenation identity
    //   w_i(x,z;y) = sum_{j+k+l=i} w_j^once(x,y;y) w_k(y,y) w_l^once(y,z;y)
    // through two independent computation routes.
    bool verify_walk_formula(std::size_t len, vertex_id x, vertex_id z, vertex_id y) const;

private:
    const int_matrix& power(std::size_t i) const;
    const int_matrix& deleted_power(std::size_t v, std::size_t i) const;
    // first_visit(x,y)[j] = walks of length j from x to y whose only visit of
    // y is the final vertex
    const bigint& first_visit(std::size_t x, std::size_t y, std::size_t len) const;

    graph g_;
    mutable std::vector<int_matrix> powers_;
    mutable std::map<std::size_t, std::vector<int_matrix>> deleted_powers_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<bigint>> first_visit_;
};

bigint walks(const graph& g, std::size_t len, vertex_id x, vertex_id y);
bigint walks_visiting(const graph& g, std::size_t len, vertex_id x, vertex_id z, vertex_id y);
bigint walks_visiting_once(const graph& g, std::size_t len, vertex_id x, vertex_id z, vertex_id y);
bool verify_walk_formula(const graph& g, std::size_t len, vertex_id x, vertex_id z, vertex_id y);

// closed[i] = number of closed length-i walks at the vertex, i = 0..cap.
struct walk_profile {
    std::vector<bigint> closed;

    friend bool operator==(const walk_profile&, const walk_profile&) = default;
};

// Profiles up to length min(cap, |V|). Length |V| suffices to separate
// whatever longer counts would: higher powers are determined by the
// characteristic polynomial.
std::map<vertex_id, walk_profile> walk_profiles(const graph& g, std::size_t cap = SIZE_MAX);

} // namespace blocksieve
