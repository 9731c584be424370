#include "graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>

namespace blocksieve {

std::optional<vertex_id> parse_vertex_id(std::string_view text) {
    auto parse_int = [](std::string_view s, std::int64_t& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && p == s.data() + s.size();
    };
    auto colon = text.find(':');
    std::int64_t ns = 0, local = 0;
    if (colon == std::string_view::npos) {
        if (!parse_int(text, local)) return std::nullopt;
        return vid(local);
    }
    if (!parse_int(text.substr(0, colon), ns) || !parse_int(text.substr(colon + 1), local))
        return std::nullopt;
    if (ns < 0 || ns > INT32_MAX) return std::nullopt;
    return vid(local, static_cast<std::int32_t>(ns));
}

graph graph::from_edges(std::vector<vertex_id> vertices,
                        const std::vector<std::pair<vertex_id, vertex_id>>& edges) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        fail(errc::invalid_argument, "duplicate vertex id");

    graph g;
    g.verts_ = std::move(vertices);
    const std::size_t n = g.verts_.size();
    g.adj_.assign(n * n, 0);
    for (const auto& [u, v] : edges) {
        if (u == v) fail(errc::invalid_argument, "loop edge " + to_string(u));
        const std::size_t i = g.index_of(u);
        const std::size_t j = g.index_of(v);
        if (!g.adj_[i * n + j]) {
            g.adj_[i * n + j] = g.adj_[j * n + i] = 1;
            ++g.edge_count_;
        }
    }
    g.nbrs_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.adj_[i * n + j]) g.nbrs_[i].push_back(j);
    return g;
}

bool graph::has_vertex(vertex_id v) const {
    return std::binary_search(verts_.begin(), verts_.end(), v);
}

std::size_t graph::index_of(vertex_id v) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
    if (it == verts_.end() || *it != v) fail(errc::unknown_vertex, "unknown vertex " + to_string(v));
    return static_cast<std::size_t>(it - verts_.begin());
}

bool graph::adjacent(vertex_id u, vertex_id v) const {
    return adjacent_at(index_of(u), index_of(v));
}

std::vector<std::pair<vertex_id, vertex_id>> graph::edges() const {
    std::vector<std::pair<vertex_id, vertex_id>> out;
    out.reserve(edge_count_);
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adj_[i * n + j]) out.emplace_back(verts_[i], verts_[j]);
    return out;
}

graph graph::complement() const {
    std::vector<std::pair<vertex_id, vertex_id>> ce;
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!adj_[i * n + j]) ce.emplace_back(verts_[i], verts_[j]);
    return from_edges(verts_, ce);
}

int_matrix adjacency_matrix(const graph& g) {
    const std::size_t n = g.vertex_count();
    int_matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.neighbors_at(i)) m.at(i, j) = 1;
    return m;
}

std::vector<vertex_set> connected_components(const graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<vertex_set> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        vertex_set cell;
        std::deque<std::size_t> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            std::size_t i = queue.front();
            queue.pop_front();
            cell.push_back(g.vertex_at(i));
            for (std::size_t j : g.neighbors_at(i))
                if (!seen[j]) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
        }
        std::sort(cell.begin(), cell.end());
        out.push_back(std::move(cell));
    }
    // vertices are scanned in ascending order, so the cells already come out
    // ordered by their least element
    return out;
}

static std::vector<std::int64_t> bfs_from(const graph& g, std::size_t s) {
    std::vector<std::int64_t> dist(g.vertex_count(), -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t j : g.neighbors_at(i))
            if (dist[j] < 0) {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
    }
    return dist;
}

std::vector<std::vector<distance_value>> distance_matrix(const graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<distance_value>> out(n, std::vector<distance_value>(n));
    for (std::size_t s = 0; s < n; ++s) {
        auto row = bfs_from(g, s);
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] >= 0) out[s][j] = row[j];
    }
    return out;
}

distance_value eccentricity(const graph& g, vertex_id v) {
    auto row = bfs_from(g, g.index_of(v));
    std::int64_t worst = 0;
    for (std::int64_t d : row) {
        if (d < 0) return std::nullopt;
        worst = std::max(worst, d);
    }
    return worst;
}

vertex_set center(const graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) fail(errc::invalid_argument, "center of the empty graph");
    std::vector<std::int64_t> ecc(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto row = bfs_from(g, s);
        std::int64_t worst = 0;
        for (std::int64_t d : row) {
            if (d < 0) fail(errc::disconnected_input, "center requires a connected graph");
            worst = std::max(worst, d);
        }
        ecc[s] = worst;
    }
    const std::int64_t best = *std::min_element(ecc.begin(), ecc.end());
    vertex_set out;
    for (std::size_t s = 0; s < n; ++s)
        if (ecc[s] == best) out.push_back(g.vertex_at(s));
    return out;
}

graph induced_subgraph(const graph& g, std::span<const vertex_id> keep) {
    std::vector<vertex_id> verts(keep.begin(), keep.end());
    std::sort(verts.begin(), verts.end());
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    for (std::size_t a = 0; a < verts.size(); ++a) {
        const std::size_t i = g.index_of(verts[a]);
        for (std::size_t b = a + 1; b < verts.size(); ++b)
            if (g.adjacent_at(i, g.index_of(verts[b]))) edges.emplace_back(verts[a], verts[b]);
    }
    return graph::from_edges(std::move(verts), edges);
}

union_result disjoint_union(std::span<const graph> parts) {
    union_result res;
    std::vector<vertex_id> verts;
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const graph& p = parts[i];
        for (std::size_t j = 0; j < p.vertex_count(); ++j) {
            vertex_id fresh = vid(static_cast<std::int64_t>(j), static_cast<std::int32_t>(i));
            verts.push_back(fresh);
            res.provenance.emplace(fresh, std::make_pair(i, p.vertex_at(j)));
        }
        for (const auto& [u, v] : p.edges())
            edges.emplace_back(vid(static_cast<std::int64_t>(p.index_of(u)), static_cast<std::int32_t>(i)),
                               vid(static_cast<std::int64_t>(p.index_of(v)), static_cast<std::int32_t>(i)));
    }
    res.g = graph::from_edges(std::move(verts), edges);
    return res;
}

std::vector<int_matrix> walk_count_tensor(const graph& g, std::size_t max_len) {
    std::vector<int_matrix> out;
    out.reserve(max_len + 1);
    out.push_back(int_matrix::identity(g.vertex_count()));
    const int_matrix a = adjacency_matrix(g);
    for (std::size_t i = 1; i <= max_len; ++i) out.push_back(out.back() * a);
    return out;
}

} // namespace blocksieve
