#include <doctest.h>

#include <random>

#include "anchored.hpp"
#include "sieve.hpp"
#include "testkit.hpp"

using namespace blocksieve;
using namespace testkit;

TEST_CASE("anchored validation") {
    graph p3 = path_graph(3);
    CHECK_NOTHROW(make_anchored(p3, {vid(1)}));
    CHECK_NOTHROW(make_anchored(p3, {vid(0), vid(1)}));
    CHECK_THROWS_AS(make_anchored(p3, {vid(0)}), error);
    CHECK_THROWS_AS(make_anchored(p3, {}), error);
    CHECK_THROWS_AS(make_anchored(p3, {vid(9)}), error);

    // disconnected: each component needs its own valid piece
    union_result u = disjoint_union(std::vector<graph>{path_graph(3), cycle_graph(3)});
    vertex_set both{vid(1, 0), vid(0, 1), vid(1, 1), vid(2, 1)};
    CHECK_NOTHROW(make_anchored(u.g, both));
    CHECK_THROWS_AS(make_anchored(u.g, {vid(1, 0)}), error);

    // one-vertex component: its vertex is an anchor by convention
    union_result w = disjoint_union(std::vector<graph>{complete_graph(1), complete_graph(2)});
    CHECK_NOTHROW(make_anchored(w.g, {vid(0, 0), vid(0, 1), vid(1, 1)}));
}

TEST_CASE("induced anchor of a vertex") {
    graph c4 = cycle_graph(4);
    for (vertex_id v : c4.vertices()) CHECK(induced_anchor(c4, v) == c4.vertices());
    CHECK(induced_anchor(path_graph(3), vid(1)) == vertex_set{vid(1)});
    graph lonely = make({5}, {});
    CHECK(induced_anchor(lonely, vid(5)) == vertex_set{vid(5)});
    CHECK_THROWS_AS(induced_anchor(lonely, vid(0)), error);
    for (vertex_id v : c4.vertices()) {
        vertex_set a = induced_anchor(c4, v);
        CHECK(std::binary_search(a.begin(), a.end(), v));
    }
}

TEST_CASE("center anchor") {
    anchor z3 = center_anchor(path_graph(3));
    CHECK(z3.kind == anchor::kind_t::cut_vertex);
    CHECK(z3.vertices == vertex_set{vid(1)});

    anchor zc = center_anchor(cycle_graph(4));
    CHECK(zc.kind == anchor::kind_t::block);
    CHECK(zc.vertices.size() == 4);

    // centre of P4 is the middle edge-block
    anchor z4 = center_anchor(path_graph(4));
    CHECK(z4.kind == anchor::kind_t::block);
    CHECK(z4.vertices == vertex_set{vid(1), vid(2)});

    anchor z1 = center_anchor(complete_graph(1));
    CHECK(z1.kind == anchor::kind_t::cut_vertex);

    // (g, center_anchor(g)) is always a valid anchored graph
    for (int n = 1; n <= 6; ++n)
        for (const mask_graph& m : all_graphs_up_to_iso(n, true)) {
            graph g = to_graph(m);
            CHECK_NOTHROW(make_anchored(g, center_anchor(g).vertices));
        }
}

TEST_CASE("split at a cut vertex") {
    split_result sp = split_at(glued_triangles(), vid(0));
    CHECK(sp.g.vertex_count() == 6);
    CHECK(connected_components(sp.g).size() == 2);
    REQUIRE(sp.copies.size() == 2);
    CHECK(sp.copies[0] == vid(0, 1));
    CHECK(sp.copies[1] == vid(0, 2));
    for (const vertex_set& cell : connected_components(sp.g)) {
        graph comp = induced_subgraph(sp.g, cell);
        CHECK(comp.vertex_count() == 3);
        CHECK(comp.edge_count() == 3); // two disjoint triangles
    }

    split_result star = split_at(star_graph(3), vid(0));
    CHECK(star.g.vertex_count() == 6);
    CHECK(star.g.edge_count() == 3);
    CHECK(connected_components(star.g).size() == 3);

    split_result k1 = split_at(complete_graph(1), vid(0));
    CHECK(k1.g == complete_graph(1));

    CHECK_THROWS_AS(split_at(cycle_graph(4), vid(0)), error);
    union_result u = disjoint_union(std::vector<graph>{path_graph(3), complete_graph(1)});
    CHECK_THROWS_AS(split_at(u.g, vid(1, 0)), error);
}

TEST_CASE("peel: cut-vertex anchor") {
    anchored_graph ag = make_anchored(glued_triangles(), {vid(0)});
    anchored_graph peeled = peel(ag);
    CHECK(connected_components(peeled.g).size() == 2);
    // every vertex of both triangles lands in the anchor
    CHECK(peeled.anchor_vertices.size() == 6);
    for (const component_anchor& ca : component_anchors(peeled)) {
        CHECK(ca.a.kind == anchor::kind_t::block);
        CHECK(ca.a.vertices == ca.component);
    }

    anchored_graph k1 = make_anchored(complete_graph(1), {vid(0)});
    anchored_graph pk1 = peel(k1);
    CHECK(pk1.g == complete_graph(1));
    CHECK(pk1.anchor_vertices == vertex_set{vid(0)});
}

TEST_CASE("peel: block anchor") {
    graph c4 = cycle_graph(4);
    anchored_graph ag = make_anchored(c4, c4.vertices());
    anchored_graph peeled = peel(ag);
    CHECK(peeled.g.edge_count() == 0);
    CHECK(peeled.g.vertices() == c4.vertices());
    CHECK(peeled.anchor_vertices == c4.vertices());

    // sun graph with the cycle block as anchor: anchor grows to everything
    graph sun = sun_graph();
    anchored_graph sag = make_anchored(sun, {vid(1), vid(2), vid(3), vid(4)});
    anchored_graph speeled = peel(sag);
    CHECK(speeled.g.edge_count() == 4);
    CHECK(speeled.anchor_vertices == sun.vertices());
    CHECK(connected_components(speeled.g).size() == 4);
}

TEST_CASE("peel: anchor-growth conditions for block anchors, n <= 7") {
    for (int n = 2; n <= 7; ++n)
        for (const mask_graph& m : connected_reps(n)) {
            graph g = to_graph(m);
            block_decomposition d = decompose_blocks(g);
            for (const anchor& a : all_anchors(g)) {
                if (a.kind != anchor::kind_t::block) continue;
                anchored_graph peeled = peel(make_anchored(g, a.vertices));
                // anchors only grow
                CHECK(std::includes(peeled.anchor_vertices.begin(),
                                    peeled.anchor_vertices.end(), a.vertices.begin(),
                                    a.vertices.end()));
                for (vertex_id v : peeled.anchor_vertices) {
                    if (std::binary_search(a.vertices.begin(), a.vertices.end(), v)) continue;
                    // a fresh anchor vertex shares a block with an old anchor
                    // vertex lying in exactly two blocks
                    bool witnessed = false;
                    for (vertex_id u : a.vertices) {
                        if (d.containing_blocks.at(u).size() != 2) continue;
                        for (std::size_t bi : d.containing_blocks.at(u))
                            if (std::binary_search(d.blocks[bi].begin(), d.blocks[bi].end(), v))
                                witnessed = true;
                    }
                    CHECK(witnessed);
                }
                // converse direction: a two-block anchor vertex drags every
                // block-mate into the new anchor
                for (vertex_id u : a.vertices) {
                    if (!d.containing_blocks.count(u) ||
                        d.containing_blocks.at(u).size() != 2)
                        continue;
                    for (std::size_t bi : d.containing_blocks.at(u))
                        for (vertex_id v : d.blocks[bi])
                            CHECK(std::binary_search(peeled.anchor_vertices.begin(),
                                                     peeled.anchor_vertices.end(), v));
                }
            }
        }
}

TEST_CASE("peel reduces the block count of every component") {
    for (int n = 2; n <= 6; ++n)
        for (const mask_graph& m : all_graphs_up_to_iso(n, true)) {
            graph g = to_graph(m);
            const std::size_t before = decompose_blocks(g).blocks.size();
            for (const anchor& a : all_anchors(g)) {
                anchored_graph peeled = peel(make_anchored(g, a.vertices));
                for (const component_anchor& ca : component_anchors(peeled))
                    CHECK(decompose_blocks(induced_subgraph(peeled.g, ca.component))
                              .blocks.size() < before);
            }
        }
}

TEST_CASE("rooted block trees") {
    rooted_tree rt = rooted_block_tree(make_anchored(path_graph(3), {vid(1)}));
    CHECK(rt.tree.nodes[rt.root].color == node_color::black);
    CHECK(rt.tree.nodes.size() == 3);

    graph c4 = cycle_graph(4);
    rooted_tree rc = rooted_block_tree(make_anchored(c4, c4.vertices()));
    CHECK(rc.tree.nodes.size() == 1);
    CHECK(rc.tree.nodes[rc.root].color == node_color::white);

    anchor z = center_anchor(path_graph(4));
    rooted_tree rp = rooted_block_tree(make_anchored(path_graph(4), z.vertices));
    CHECK(rp.tree.nodes.size() == 5);
    CHECK(rp.tree.nodes[rp.root].color == node_color::white);
    CHECK(rp.tree.nodes[rp.root].block == vertex_set{vid(1), vid(2)});
}

TEST_CASE("tree joins") {
    rooted_tree white_leaf;
    white_leaf.tree.nodes.push_back(tree_node{node_color::white, {}, {}, {}});
    white_leaf.root = 0;

    rooted_tree joined = join_trees_at_cut(std::vector<rooted_tree>{white_leaf, white_leaf});
    CHECK(joined.tree.nodes.size() == 3);
    CHECK(joined.tree.nodes[joined.root].color == node_color::black);
    CHECK(joined.tree.edges.size() == 2);

    rooted_tree single = join_trees_at_cut(std::vector<rooted_tree>{white_leaf});
    CHECK(single.tree.nodes.size() == 2);

    rooted_tree black_leaf;
    black_leaf.tree.nodes.push_back(tree_node{node_color::black, {}, {}, {}});
    black_leaf.root = 0;
    CHECK_THROWS_AS(join_trees_at_cut(std::vector<rooted_tree>{black_leaf}), error);

    // four lone black roots vanish under the block join
    rooted_tree all_black = join_trees_at_block(
        std::vector<rooted_tree>{black_leaf, black_leaf, black_leaf, black_leaf});
    CHECK(all_black.tree.nodes.size() == 1);
    CHECK(all_black.tree.nodes[all_black.root].color == node_color::white);

    // one white input: root - stub - leaf path
    rooted_tree one_white = join_trees_at_block(std::vector<rooted_tree>{white_leaf});
    CHECK(one_white.tree.nodes.size() == 3);
    CHECK(one_white.tree.nodes[one_white.root].color == node_color::white);
    auto adj = one_white.tree.adjacency();
    CHECK(adj[one_white.root].size() == 1);
}

namespace {

// Diamond block {0,1,2,3} (K4 minus the 1-3 chord), two triangles hanging at
// 0, one triangle hanging at 3. Vertices 1 and 2 are internal to the diamond.
graph diamond_with_satellites() {
    return make({0, 1, 2, 3, 10, 11, 12, 13, 14, 15},
                {{0, 3}, {3, 2}, {2, 0}, {0, 1}, {1, 2},            // diamond
                 {0, 10}, {10, 11}, {11, 0},                        // triangle at 0
                 {0, 12}, {12, 13}, {13, 0},                        // second triangle at 0
                 {3, 14}, {14, 15}, {15, 3}});                      // triangle at 3
}

} // namespace

TEST_CASE("reconstruction equals the direct rooted block tree: fixed cases") {
    auto same = [](const anchored_graph& ag) {
        return canonical_code(reconstruct_block_tree(ag)) ==
               canonical_code(rooted_block_tree(ag));
    };
    CHECK(same(make_anchored(path_graph(3), {vid(1)})));
    graph c4 = cycle_graph(4);
    CHECK(same(make_anchored(c4, c4.vertices())));
    CHECK(same(make_anchored(glued_triangles(), {vid(0)})));
    graph sun = sun_graph();
    CHECK(same(make_anchored(sun, {vid(1), vid(2), vid(3), vid(4)})));
    graph diamond = diamond_with_satellites();
    CHECK(same(make_anchored(diamond, {vid(0), vid(1), vid(2), vid(3)})));
}

TEST_CASE("peel on the diamond fixture grows the anchor exactly at the 2-block vertex") {
    graph g = diamond_with_satellites();
    const vertex_set diamond{vid(0), vid(1), vid(2), vid(3)};
    anchored_graph peeled = peel(make_anchored(g, diamond));
    // rho(0) = {0} (three blocks), rho(1) = {1}, rho(2) = {2} (internal, now
    // isolated), rho(3) = its remaining triangle (exactly two blocks before)
    CHECK(peeled.anchor_vertices ==
          vertex_set{vid(0), vid(1), vid(2), vid(3), vid(14), vid(15)});
    CHECK(connected_components(peeled.g).size() == 4);
    auto cas = component_anchors(peeled);
    std::size_t cut_rooted = 0, block_rooted = 0, dropped_style = 0;
    for (const component_anchor& ca : cas) {
        if (ca.a.kind == anchor::kind_t::cut_vertex)
            (ca.component.size() == 1 ? dropped_style : cut_rooted)++;
        else
            block_rooted++;
    }
    CHECK(cut_rooted == 1);     // vertex 0 still cuts its two triangles apart
    CHECK(dropped_style == 2);  // the internal diamond vertices 1 and 2
    CHECK(block_rooted == 1);   // the triangle at 3
}

TEST_CASE("reconstruction sweep: all anchors, connected n <= 6") {
    for (int n = 2; n <= 6; ++n)
        for (const mask_graph& m : all_graphs_up_to_iso(n, true)) {
            graph g = to_graph(m);
            for (const anchor& a : all_anchors(g)) {
                anchored_graph ag = make_anchored(g, a.vertices);
                CHECK(canonical_code(reconstruct_block_tree(ag)) ==
                      canonical_code(rooted_block_tree(ag)));
            }
        }
}

TEST_CASE("reconstruction sweep: 300 random anchored graphs, n <= 10") {
    std::mt19937_64 rng(47);
    int done = 0;
    while (done < 300) {
        const int n = 2 + static_cast<int>(rng() % 9);
        graph g = random_connected_graph(rng, n, 0.25);
        auto anchors = all_anchors(g);
        if (anchors.empty()) continue;
        const anchor& a = anchors[rng() % anchors.size()];
        anchored_graph ag = make_anchored(g, a.vertices);
        CHECK(canonical_code(reconstruct_block_tree(ag)) ==
              canonical_code(rooted_block_tree(ag)));
        ++done;
    }
}

namespace {

// rooted-tree shape only: colours dropped on purpose
std::string shape_code(const rooted_tree& t) {
    auto adj = t.tree.adjacency();
    std::function<std::string(std::size_t, std::size_t)> rec = [&](std::size_t v,
                                                                   std::size_t parent) {
        std::vector<std::string> cs;
        for (std::size_t w : adj[v])
            if (w != parent || parent == v) cs.push_back(rec(w, v));
        std::sort(cs.begin(), cs.end());
        std::string out = "(";
        for (auto& c : cs) out += c;
        return out + ")";
    };
    return rec(t.root, t.root);
}

} // namespace

TEST_CASE("root colour rigidity: equal rooted shapes force equal anchor kinds") {
    // over anchored graphs with the same vertex count, a rooted isomorphism
    // of the bare trees already determines the colours
    for (int n = 2; n <= 5; ++n) {
        struct entry {
            std::string shape;
            anchor::kind_t kind;
        };
        std::vector<entry> entries;
        for (const mask_graph& m : all_graphs_up_to_iso(n, true)) {
            graph g = to_graph(m);
            for (const anchor& a : all_anchors(g))
                entries.push_back(
                    {shape_code(rooted_block_tree(make_anchored(g, a.vertices))), a.kind});
        }
        for (const entry& a : entries)
            for (const entry& b : entries)
                if (a.shape == b.shape) CHECK(a.kind == b.kind);
    }
}
