#include "blocks.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace blocksieve {

bool block_decomposition::is_cut(vertex_id v) const {
    return std::binary_search(cut_vertices.begin(), cut_vertices.end(), v);
}

std::optional<std::size_t> block_decomposition::find_block(const vertex_set& vs) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i] == vs) return i;
    return std::nullopt;
}

block_decomposition decompose_blocks(const graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::int64_t> disc(n, -1), low(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> edge_stack;
    std::vector<std::set<std::size_t>> raw_blocks; // vertex-index sets
    std::vector<char> articulation(n, 0);
    std::int64_t timer = 0;

    std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t u, std::int64_t parent) {
        disc[u] = low[u] = timer++;
        std::size_t children = 0;
        for (std::size_t v : g.neighbors_at(u)) {
            if (disc[v] < 0) {
                ++children;
                edge_stack.emplace_back(u, v);
                dfs(v, static_cast<std::int64_t>(u));
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    if (parent >= 0 || children > 1) articulation[u] = 1;
                    std::set<std::size_t> blk;
                    std::pair<std::size_t, std::size_t> top;
                    do {
                        top = edge_stack.back();
                        edge_stack.pop_back();
                        blk.insert(top.first);
                        blk.insert(top.second);
                    } while (top != std::make_pair(u, v));
                    raw_blocks.push_back(std::move(blk));
                }
            } else if (static_cast<std::int64_t>(v) != parent && disc[v] < disc[u]) {
                edge_stack.emplace_back(u, v);
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };

    for (std::size_t s = 0; s < n; ++s)
        if (disc[s] < 0) dfs(s, -1);

    block_decomposition d;
    std::vector<vertex_set> blocks;
    for (const auto& blk : raw_blocks) {
        vertex_set vs;
        for (std::size_t i : blk) vs.push_back(g.vertex_at(i));
        std::sort(vs.begin(), vs.end());
        blocks.push_back(std::move(vs));
    }
    std::sort(blocks.begin(), blocks.end(), [](const vertex_set& a, const vertex_set& b) {
        if (a.front() != b.front()) return a.front() < b.front();
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    d.blocks = std::move(blocks);

    for (std::size_t s = 0; s < n; ++s)
        if (articulation[s] || g.degree_at(s) == 0) d.cut_vertices.push_back(g.vertex_at(s));

    for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
        const vertex_set& b = d.blocks[bi];
        for (vertex_id v : b) d.containing_blocks[v].push_back(bi);
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y)
                if (g.adjacent(b[x], b[y])) d.edge_block[{b[x], b[y]}] = bi;
    }
    return d;
}

bool is_2connected(const graph& g) {
    if (g.vertex_count() < 2) return false;
    if (connected_components(g).size() != 1) return false;
    block_decomposition d = decompose_blocks(g);
    return d.blocks.size() == 1 && d.cut_vertices.empty();
}

std::vector<std::vector<std::size_t>> colored_tree::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

static void require_connected(const graph& g, const char* who) {
    if (g.vertex_count() == 0) fail(errc::invalid_argument, std::string(who) + ": empty graph");
    if (connected_components(g).size() != 1)
        fail(errc::disconnected_input, std::string(who) + " requires a connected graph");
}

colored_tree block_tree(const graph& g) {
    require_connected(g, "block_tree");
    block_decomposition d = decompose_blocks(g);
    colored_tree t;
    for (const vertex_set& b : d.blocks) {
        tree_node node;
        node.color = node_color::white;
        node.block = b;
        t.nodes.push_back(std::move(node));
    }
    std::map<vertex_id, std::size_t> cut_node;
    for (vertex_id c : d.cut_vertices) {
        tree_node node;
        node.color = node_color::black;
        node.cut_vertex = c;
        cut_node[c] = t.nodes.size();
        t.nodes.push_back(std::move(node));
    }
    for (vertex_id c : d.cut_vertices) {
        auto it = d.containing_blocks.find(c);
        if (it == d.containing_blocks.end()) continue; // lone vertex of a K1 graph
        for (std::size_t bi : it->second) t.edges.emplace_back(bi, cut_node.at(c));
    }
    std::sort(t.edges.begin(), t.edges.end());
    return t;
}

graph block_graph(const graph& g) {
    require_connected(g, "block_graph");
    block_decomposition d = decompose_blocks(g);
    std::vector<vertex_id> verts;
    for (std::size_t i = 0; i < d.blocks.size(); ++i) verts.push_back(vid(static_cast<std::int64_t>(i)));
    std::vector<std::pair<vertex_id, vertex_id>> edges;
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < d.blocks.size(); ++j) {
            // distinct blocks meet in at most one vertex
            bool meet = false;
            for (vertex_id v : d.blocks[i])
                if (std::binary_search(d.blocks[j].begin(), d.blocks[j].end(), v)) {
                    meet = true;
                    break;
                }
            if (meet) edges.emplace_back(verts[i], verts[j]);
        }
    return graph::from_edges(std::move(verts), edges);
}

bool is_block_graph(const graph& g) {
    block_decomposition d = decompose_blocks(g);
    for (const vertex_set& b : d.blocks)
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y)
                if (!g.adjacent(b[x], b[y])) return false;
    return true;
}

void check_anchor(const graph& g, const block_decomposition& d, const anchor& a) {
    if (a.kind == anchor::kind_t::cut_vertex) {
        if (a.vertices.size() != 1)
            fail(errc::invalid_anchor, "cut-vertex anchor must be a single vertex");
        if (!g.has_vertex(a.vertices.front()))
            fail(errc::unknown_vertex, "unknown vertex " + to_string(a.vertices.front()));
        if (!d.is_cut(a.vertices.front()))
            fail(errc::invalid_anchor, to_string(a.vertices.front()) + " is not a cut vertex");
        return;
    }
    for (vertex_id v : a.vertices)
        if (!g.has_vertex(v)) fail(errc::unknown_vertex, "unknown vertex " + to_string(v));
    vertex_set sorted = a.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (!d.find_block(sorted)) fail(errc::invalid_anchor, "anchor is not a block");
}

anchor block_graph_anchor(const graph& g, const anchor& a) {
    require_connected(g, "block_graph_anchor");
    block_decomposition d = decompose_blocks(g);
    check_anchor(g, d, a);
    if (d.blocks.empty())
        fail(errc::invalid_anchor, "one-vertex graph has an empty block graph");

    if (a.kind == anchor::kind_t::cut_vertex) {
        vertex_set nodes;
        for (std::size_t bi : d.containing_blocks.at(a.vertices.front()))
            nodes.push_back(vid(static_cast<std::int64_t>(bi)));
        return anchor{anchor::kind_t::block, std::move(nodes)};
    }

    vertex_set sorted = a.vertices;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t bi = *d.find_block(sorted);
    std::size_t cuts_inside = 0;
    for (vertex_id v : sorted)
        if (d.is_cut(v)) ++cuts_inside;

    const vertex_id node = vid(static_cast<std::int64_t>(bi));
    if (cuts_inside >= 2) return anchor{anchor::kind_t::cut_vertex, {node}};
    if (cuts_inside == 1) {
        graph bg = block_graph(g);
        block_decomposition bd = decompose_blocks(bg);
        const auto& holders = bd.containing_blocks.at(node);
        return anchor{anchor::kind_t::block, bd.blocks[holders.front()]};
    }
    // no cut vertices: g is 2-connected, the block graph is a single vertex,
    // which is a cut vertex of it by the one-vertex convention
    return anchor{anchor::kind_t::cut_vertex, {node}};
}

} // namespace blocksieve
