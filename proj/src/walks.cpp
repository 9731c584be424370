#include "walks.hpp"

namespace blocksieve {

const int_matrix& walk_counter::power(std::size_t i) const {
    if (powers_.empty()) powers_.push_back(int_matrix::identity(g_.vertex_count()));
    while (powers_.size() <= i) {
        if (powers_.size() == 1)
            powers_.push_back(adjacency_matrix(g_));
        else
            powers_.push_back(powers_[1] * powers_.back());
    }
    return powers_[i];
}

const int_matrix& walk_counter::deleted_power(std::size_t v, std::size_t i) const {
    auto& pows = deleted_powers_[v];
    if (pows.empty()) {
        const std::size_t n = g_.vertex_count();
        int_matrix base = adjacency_matrix(g_);
        for (std::size_t j = 0; j < n; ++j) base.at(v, j) = base.at(j, v) = 0;
        pows.push_back(int_matrix::identity(n));
        pows.push_back(std::move(base));
    }
    while (pows.size() <= i) pows.push_back(pows[1] * pows.back());
    return pows[i];
}

const bigint& walk_counter::first_visit(std::size_t x, std::size_t y, std::size_t len) const {
    auto& table = first_visit_[{x, y}];
    if (table.empty()) table.push_back(x == y ? 1 : 0);
    while (table.size() <= len) {
        const std::size_t i = table.size();
        if (x == y) {
            table.push_back(0);
            continue;
        }
        // peel the first visit of y off an unrestricted x->y walk
        bigint value = power(i).at(x, y);
        for (std::size_t j = 0; j < i; ++j) value -= table[j] * power(i - j).at(y, y);
        table.push_back(std::move(value));
    }
    return table[len];
}

bigint walk_counter::walks(std::size_t len, vertex_id x, vertex_id y) const {
    return power(len).at(g_.index_of(x), g_.index_of(y));
}

bigint walk_counter::walks_visiting(std::size_t len, vertex_id x, vertex_id z, vertex_id y) const {
    const std::size_t xi = g_.index_of(x), zi = g_.index_of(z), yi = g_.index_of(y);
    if (yi == xi || yi == zi) return power(len).at(xi, zi);
    return power(len).at(xi, zi) - deleted_power(yi, len).at(xi, zi);
}

bigint walk_counter::walks_visiting_once(std::size_t len, vertex_id x, vertex_id z, vertex_id y) const {
    const std::size_t xi = g_.index_of(x), zi = g_.index_of(z), yi = g_.index_of(y);
    bigint total = 0;
    for (std::size_t j = 0; j <= len; ++j)
        total += first_visit(xi, yi, j) * first_visit(zi, yi, len - j);
    return total;
}

bool walk_counter::verify_walk_formula(std::size_t len, vertex_id x, vertex_id z, vertex_id y) const {
    const std::size_t xi = g_.index_of(x), zi = g_.index_of(z), yi = g_.index_of(y);
    bigint rhs = 0;
    for (std::size_t j = 0; j <= len; ++j)
        for (std::size_t k = 0; j + k <= len; ++k)
            rhs += first_visit(xi, yi, j) * power(k).at(yi, yi) * first_visit(zi, yi, len - j - k);
    return walks_visiting(len, x, z, y) == rhs;
}

bigint walks(const graph& g, std::size_t len, vertex_id x, vertex_id y) {
    return walk_counter(g).walks(len, x, y);
}
bigint walks_visiting(const graph& g, std::size_t len, vertex_id x, vertex_id z, vertex_id y) {
    return walk_counter(g).walks_visiting(len, x, z, y);
}
bigint walks_visiting_once(const graph& g, std::size_t len, vertex_id x, vertex_id z, vertex_id y) {
    return walk_counter(g).walks_visiting_once(len, x, z, y);
}
bool verify_walk_formula(const graph& g, std::size_t len, vertex_id x, vertex_id z, vertex_id y) {
    return walk_counter(g).verify_walk_formula(len, x, z, y);
}

std::map<vertex_id, walk_profile> walk_profiles(const graph& g, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    const std::size_t top = std::min(cap, n);
    auto tensor = walk_count_tensor(g, top);
    std::map<vertex_id, walk_profile> out;
    for (std::size_t i = 0; i < n; ++i) {
        walk_profile p;
        p.closed.reserve(top + 1);
        for (std::size_t len = 0; len <= top; ++len) p.closed.push_back(tensor[len].at(i, i));
        out.emplace(g.vertex_at(i), std::move(p));
    }
    return out;
}

} // namespace blocksieve
