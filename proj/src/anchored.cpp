#include "anchored.hpp"

#include <algorithm>

namespace blocksieve {

static vertex_set intersect_sorted(const vertex_set& a, const vertex_set& b) {
    vertex_set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

anchored_graph make_anchored(graph g, vertex_set r) {
    std::sort(r.begin(), r.end());
    for (vertex_id v : r)
        if (!g.has_vertex(v)) fail(errc::unknown_vertex, "unknown vertex " + to_string(v));
    const block_decomposition d = decompose_blocks(g);
    for (const vertex_set& cell : connected_components(g)) {
        vertex_set part = intersect_sorted(r, cell);
        const std::string where = "component of " + to_string(cell.front());
        if (part.empty())
            fail(errc::invalid_anchor, where + ": anchor misses the component");
        if (part.size() == 1 && d.is_cut(part.front())) continue;
        if (d.find_block(part)) continue;
        fail(errc::invalid_anchor,
             where + ": anchor piece is neither a cut vertex nor a block");
    }
    return anchored_graph{std::move(g), std::move(r)};
}

std::vector<component_anchor> component_anchors(const anchored_graph& ag) {
    const block_decomposition d = decompose_blocks(ag.g);
    std::vector<component_anchor> out;
    for (const vertex_set& cell : connected_components(ag.g)) {
        vertex_set part = intersect_sorted(ag.anchor_vertices, cell);
        anchor a;
        if (part.size() == 1 && d.is_cut(part.front()))
            a = anchor{anchor::kind_t::cut_vertex, std::move(part)};
        else
            a = anchor{anchor::kind_t::block, std::move(part)};
        out.push_back(component_anchor{cell, std::move(a)});
    }
    return out;
}

vertex_set induced_anchor(const block_decomposition& d, vertex_id v) {
    if (d.is_cut(v)) return {v}; // cut vertices and isolated vertices alike
    return d.blocks[d.containing_blocks.at(v).front()];
}

vertex_set induced_anchor(const graph& g, vertex_id v) {
    g.index_of(v); // throws on unknown vertex
    return induced_anchor(decompose_blocks(g), v);
}

anchor center_anchor(const graph& g) {
    vertex_set z = center(g); // throws on disconnected input
    const block_decomposition d = decompose_blocks(g);
    if (z.size() == 1 && d.is_cut(z.front()))
        return anchor{anchor::kind_t::cut_vertex, std::move(z)};
    for (const vertex_set& b : d.blocks)
        if (std::includes(b.begin(), b.end(), z.begin(), z.end()))
            return anchor{anchor::kind_t::block, b};
    fail(errc::invalid_argument, "center not contained in any block"); // unreachable
}

split_result split_at(const graph& g, vertex_id r) {
    if (connected_components(g).size() != 1)
        fail(errc::disconnected_input, "split requires a connected graph");
    const block_decomposition d = decompose_blocks(g);
    if (!d.is_cut(r))
        fail(errc::not_a_cut_vertex, to_string(r) + " is not a cut vertex");
    if (g.vertex_count() == 1) return split_result{g, {r}, {}};

    vertex_set rest;
    for (vertex_id v : g.vertices())
        if (v != r) rest.push_back(v);
    const graph without = induced_subgraph(g, rest);

    std::int32_t ns_base = 0;
    for (vertex_id v : g.vertices()) ns_base = std::max(ns_base, v.ns);

    split_result res;
    res.component_cells = connected_components(without);
    std::vector<vertex_id> verts = rest;
    std::vector<std::pair<vertex_id, vertex_id>> edges = without.edges();
    for (std::size_t i = 0; i < res.component_cells.size(); ++i) {
        const vertex_id copy = vid(r.local, ns_base + static_cast<std::int32_t>(i) + 1);
        res.copies.push_back(copy);
        verts.push_back(copy);
        for (vertex_id v : res.component_cells[i])
            if (g.adjacent(r, v)) edges.emplace_back(copy, v);
    }
    res.g = graph::from_edges(std::move(verts), edges);
    return res;
}

anchored_graph peel(const anchored_graph& ag) {
    auto cas = component_anchors(ag);
    if (cas.size() != 1) fail(errc::disconnected_input, "peel requires a connected graph");
    const anchor& a = cas.front().a;

    if (a.kind == anchor::kind_t::cut_vertex) {
        split_result sp = split_at(ag.g, a.vertices.front());
        const block_decomposition d = decompose_blocks(sp.g);
        vertex_set r2;
        for (vertex_id copy : sp.copies)
            for (vertex_id v : induced_anchor(d, copy)) r2.push_back(v);
        std::sort(r2.begin(), r2.end());
        r2.erase(std::unique(r2.begin(), r2.end()), r2.end());
        return make_anchored(std::move(sp.g), std::move(r2));
    }

    // block anchor: delete the edges inside it
    std::vector<std::pair<vertex_id, vertex_id>> kept;
    for (const auto& [u, v] : ag.g.edges()) {
        const bool inside = std::binary_search(a.vertices.begin(), a.vertices.end(), u) &&
                            std::binary_search(a.vertices.begin(), a.vertices.end(), v);
        if (!inside) kept.push_back({u, v});
    }
    graph stripped = graph::from_edges(ag.g.vertices(), kept);
    const block_decomposition d = decompose_blocks(stripped);
    vertex_set r2;
    for (vertex_id v : a.vertices)
        for (vertex_id w : induced_anchor(d, v)) r2.push_back(w);
    std::sort(r2.begin(), r2.end());
    r2.erase(std::unique(r2.begin(), r2.end()), r2.end());
    return make_anchored(std::move(stripped), std::move(r2));
}

rooted_tree rooted_block_tree(const anchored_graph& ag) {
    auto cas = component_anchors(ag);
    if (cas.size() != 1)
        fail(errc::disconnected_input, "rooted_block_tree requires a connected graph");
    const anchor& a = cas.front().a;
    rooted_tree rt;
    rt.tree = block_tree(ag.g);
    for (std::size_t i = 0; i < rt.tree.nodes.size(); ++i) {
        const tree_node& node = rt.tree.nodes[i];
        if (a.kind == anchor::kind_t::cut_vertex) {
            if (node.cut_vertex && *node.cut_vertex == a.vertices.front()) {
                rt.root = i;
                return rt;
            }
        } else if (node.block && *node.block == a.vertices) {
            rt.root = i;
            return rt;
        }
    }
    fail(errc::invalid_anchor, "anchor has no block-tree node"); // unreachable after validation
}

static std::size_t append_tree(colored_tree& out, const colored_tree& in) {
    const std::size_t offset = out.nodes.size();
    out.nodes.insert(out.nodes.end(), in.nodes.begin(), in.nodes.end());
    for (auto [a, b] : in.edges) out.edges.emplace_back(a + offset, b + offset);
    return offset;
}

rooted_tree join_trees_at_cut(std::span<const rooted_tree> trees) {
    rooted_tree out;
    std::vector<std::size_t> roots;
    for (const rooted_tree& t : trees) {
        if (t.tree.nodes[t.root].color != node_color::white)
            fail(errc::root_color_violation, "inputs must be white-rooted");
        roots.push_back(append_tree(out.tree, t.tree) + t.root);
    }
    tree_node joint;
    joint.color = node_color::black;
    out.root = out.tree.nodes.size();
    out.tree.nodes.push_back(std::move(joint));
    for (std::size_t r : roots) out.tree.edges.emplace_back(r, out.root);
    return out;
}

rooted_tree join_trees_at_block(std::span<const rooted_tree> trees) {
    rooted_tree out;
    std::vector<std::size_t> attach; // nodes the fresh white root will join
    for (const rooted_tree& t : trees) {
        const bool white = t.tree.nodes[t.root].color == node_color::white;
        if (!white && t.tree.nodes.size() == 1) continue; // plays no role
        const std::size_t root = append_tree(out.tree, t.tree) + t.root;
        if (white) {
            tree_node stub;
            stub.color = node_color::black;
            const std::size_t stub_at = out.tree.nodes.size();
            out.tree.nodes.push_back(std::move(stub));
            out.tree.edges.emplace_back(root, stub_at);
            attach.push_back(stub_at);
        } else {
            attach.push_back(root);
        }
    }
    tree_node joint;
    joint.color = node_color::white;
    out.root = out.tree.nodes.size();
    out.tree.nodes.push_back(std::move(joint));
    for (std::size_t r : attach) out.tree.edges.emplace_back(r, out.root);
    return out;
}

rooted_tree reconstruct_block_tree(const anchored_graph& ag) {
    auto cas = component_anchors(ag);
    if (cas.size() != 1)
        fail(errc::disconnected_input, "reconstruct_block_tree requires a connected graph");
    if (ag.g.vertex_count() < 2)
        fail(errc::invalid_argument, "reconstruct_block_tree requires >= 2 vertices");
    const bool cut_anchor = cas.front().a.kind == anchor::kind_t::cut_vertex;

    const anchored_graph peeled = peel(ag);
    std::vector<rooted_tree> parts;
    for (const component_anchor& ca : component_anchors(peeled)) {
        anchored_graph piece =
            make_anchored(induced_subgraph(peeled.g, ca.component), ca.a.vertices);
        parts.push_back(rooted_block_tree(piece));
    }
    return cut_anchor ? join_trees_at_cut(parts) : join_trees_at_block(parts);
}

} // namespace blocksieve
