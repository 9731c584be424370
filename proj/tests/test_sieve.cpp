#include <doctest.h>

#include <random>
#include <set>

#include "sieve.hpp"
#include "testkit.hpp"

using namespace blocksieve;
using namespace testkit;

namespace {

bool verify_witness(const graph& g, const graph& h, const std::map<vertex_id, vertex_id>& w) {
    if (w.size() != g.vertex_count()) return false;
    std::set<vertex_id> images;
    for (const auto& [x, a] : w) images.insert(a);
    if (images.size() != h.vertex_count()) return false;
    for (vertex_id u : g.vertices())
        for (vertex_id v : g.vertices())
            if (u < v && g.adjacent(u, v) != h.adjacent(w.at(u), w.at(v))) return false;
    return true;
}

const check_record* first_failure(const sieve_report& rep) {
    for (const check_record& c : rep.checks)
        if (!c.passed) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("signatures") {
    graph_signature k2 = signature_of(complete_graph(2));
    CHECK(k2.vertex_count == 2);
    CHECK(k2.edge_count == 1);
    CHECK(k2.degrees == std::vector<std::size_t>{1, 1});
    CHECK(k2.adj_char_poly == std::vector<bigint>{-1, 0, 1});
    CHECK(k2.complement_char_poly == std::vector<bigint>{0, 0, 1}); // x^2

    // invariance under relabeling
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        graph g = random_graph(rng, 2 + static_cast<int>(rng() % 6), 0.4);
        graph h = apply_map(g, random_relabel(rng, g));
        CHECK(signature_of(g) == signature_of(h));
        CHECK(signature_of(g).digest() == signature_of(h).digest());
    }

    // the classic cospectral mates: equal adjacency polynomials, different
    // degree multisets
    union_result c4k1 = disjoint_union(std::vector<graph>{cycle_graph(4), complete_graph(1)});
    graph star = star_graph(4);
    graph_signature a = signature_of(c4k1.g);
    graph_signature b = signature_of(star);
    CHECK(a.adj_char_poly == b.adj_char_poly);
    CHECK(a.degrees != b.degrees);
    CHECK(a.complement_char_poly != b.complement_char_poly);
}

TEST_CASE("canonical codes of rooted colored trees") {
    rooted_tree white, black;
    white.tree.nodes.push_back(tree_node{node_color::white, {}, {}, {}});
    black.tree.nodes.push_back(tree_node{node_color::black, {}, {}, {}});
    CHECK(canonical_code(white) != canonical_code(black));

    // two labelings of the same rooted tree agree
    rooted_tree a = rooted_block_tree(make_anchored(path_graph(3), {vid(1)}));
    graph relabeled = make({10, 20, 30}, {{10, 20}, {20, 30}});
    rooted_tree b = rooted_block_tree(make_anchored(relabeled, {vid(20)}));
    CHECK(canonical_code(a) == canonical_code(b));

    // root placement matters
    rooted_tree at_leaf = rooted_block_tree(make_anchored(path_graph(3), {vid(0), vid(1)}));
    CHECK(canonical_code(a) != canonical_code(at_leaf));

    // node labels feed the code
    rooted_tree labelled = a;
    labelled.tree.nodes[labelled.root].label = "x";
    CHECK(canonical_code(labelled) != canonical_code(a));
}

TEST_CASE("classical isomorphism search") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        graph g = random_graph(rng, 2 + static_cast<int>(rng() % 9), 0.4);
        graph h = apply_map(g, random_relabel(rng, g));
        auto w = find_isomorphism(g, h);
        REQUIRE(w.has_value());
        CHECK(verify_witness(g, h, *w));
    }
    CHECK_FALSE(find_isomorphism(cycle_graph(4), star_graph(3)).has_value());
    CHECK_FALSE(find_isomorphism(path_graph(4), cycle_graph(4)).has_value());
    CHECK(find_isomorphism(path_graph(4), path_graph(4)).has_value());
}

TEST_CASE("sieve on isomorphic pairs says ISO with a verified witness") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        graph g = random_graph(rng, 1 + static_cast<int>(rng() % 9), 0.35);
        graph h = apply_map(g, random_relabel(rng, g));
        sieve_report rep = run_sieve(g, h);
        CHECK(rep.verdict == verdict_t::iso);
        REQUIRE(rep.witness.has_value());
        CHECK(verify_witness(g, h, *rep.witness));
    }
}

TEST_CASE("sieve refutations carry a failing justified record") {
    // different edge counts
    sieve_report r1 = run_sieve(path_graph(3), complete_graph(3));
    CHECK(r1.verdict == verdict_t::not_qi);
    REQUIRE(first_failure(r1) != nullptr);
    CHECK(first_failure(r1)->name == "vertex-edge-counts");
    CHECK_FALSE(first_failure(r1)->justification.empty());

    // the cospectral mates die on the component check, not on cospectrality
    union_result c4k1 = disjoint_union(std::vector<graph>{cycle_graph(4), complete_graph(1)});
    sieve_report r2 = run_sieve(c4k1.g, star_graph(4));
    CHECK(r2.verdict == verdict_t::not_qi);
    const check_record* fail2 = first_failure(r2);
    REQUIRE(fail2 != nullptr);
    CHECK(fail2->name == "component-signatures");
    // adjacency cospectrality itself passed
    bool cospectral_passed = false;
    for (const check_record& c : r2.checks)
        if (c.name == "adjacency-cospectrality" && c.passed) cospectral_passed = true;
    CHECK(cospectral_passed);

    // C4 vs K1,3: vertex counts match, edge counts differ
    sieve_report r3 = run_sieve(cycle_graph(4), star_graph(3));
    CHECK(r3.verdict == verdict_t::not_qi);
    CHECK(first_failure(r3)->name == "vertex-edge-counts");
}

TEST_CASE("sieve is sound on randomized isomorphic pairs (never NOT_QI)") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 120; ++trial) {
        graph g = random_graph(rng, 1 + static_cast<int>(rng() % 10), 0.3);
        graph h = apply_map(g, random_relabel(rng, g));
        CHECK(run_sieve(g, h).verdict != verdict_t::not_qi);
    }
}

TEST_CASE("trees are fully decided: ISO or NOT_QI, never UNKNOWN") {
    std::mt19937_64 rng(71);
    auto random_tree = [&rng](int n) {
        std::vector<vertex_id> vs;
        edge_list es;
        for (int i = 0; i < n; ++i) {
            vs.push_back(vid(i));
            if (i) {
                std::uniform_int_distribution<int> pick(0, i - 1);
                es.emplace_back(vid(pick(rng)), vid(i));
            }
        }
        return graph::from_edges(std::move(vs), es);
    };
    for (int trial = 0; trial < 60; ++trial) {
        graph t1 = random_tree(2 + static_cast<int>(rng() % 8));
        graph t2 = random_tree(2 + static_cast<int>(rng() % 8));
        sieve_report rep = run_sieve(t1, t2);
        CHECK(rep.verdict != verdict_t::unknown);
        const bool actually_iso = find_isomorphism(t1, t2).has_value();
        CHECK((rep.verdict == verdict_t::iso) == actually_iso);
    }
}

TEST_CASE("sieve separates all small non-isomorphic connected graphs it can") {
    // on <= 5 vertices every pair of distinct connected graphs is refuted or
    // distinguished; none may come back ISO
    auto reps4 = all_graphs_up_to_iso(4, true);
    auto reps5 = all_graphs_up_to_iso(5, true);
    std::vector<graph> graphs;
    for (const auto& m : reps4) graphs.push_back(to_graph(m));
    for (const auto& m : reps5) graphs.push_back(to_graph(m));
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i + 1; j < graphs.size(); ++j)
            CHECK(run_sieve(graphs[i], graphs[j]).verdict != verdict_t::iso);
}

TEST_CASE("deep refutation: same counts and spectra class, different block structure") {
    // two gluings of three triangles: a path of triangles vs a star of
    // triangles; both connected, 7 vertices, 9 edges, all blocks triangles
    graph chain = make({0, 1, 2, 3, 4, 5, 6},
                       {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}, {4, 5}, {5, 6}, {6, 4}});
    graph bouquet = make({0, 1, 2, 3, 4, 5, 6},
                         {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}, {0, 5}, {5, 6}, {6, 0}});
    sieve_report rep = run_sieve(chain, bouquet);
    CHECK(rep.verdict == verdict_t::not_qi);
    const check_record* f = first_failure(rep);
    REQUIRE(f != nullptr);
    // must be refuted by block structure, not by counting
    CHECK(f->name != "vertex-edge-counts");
}

TEST_CASE("block tree witness") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        graph g = random_connected_graph(rng, 2 + static_cast<int>(rng() % 7), 0.3);
        graph h = apply_map(g, random_relabel(rng, g));
        auto w = block_tree_witness(g, h);
        REQUIRE(w.has_value());
        CHECK(w->alpha.size() == w->tree_g.nodes.size());
        // colours preserved and block labels equal along alpha
        for (auto [u, v] : w->alpha) {
            CHECK(w->tree_g.nodes[u].color == w->tree_h.nodes[v].color);
            CHECK(w->tree_g.nodes[u].label == w->tree_h.nodes[v].label);
        }
        // beta is an isomorphism of the block graphs
        graph bg = block_graph(g);
        graph bh = block_graph(h);
        std::map<vertex_id, vertex_id> bmap(w->beta.begin(), w->beta.end());
        CHECK(bmap.size() == bg.vertex_count());
        for (vertex_id u : bg.vertices())
            for (vertex_id v : bg.vertices())
                if (u < v) CHECK(bg.adjacent(u, v) == bh.adjacent(bmap.at(u), bmap.at(v)));
    }

    // different tree shapes: no witness
    CHECK_FALSE(block_tree_witness(path_graph(4), star_graph(3)).has_value());
    union_result u = disjoint_union(std::vector<graph>{complete_graph(1), complete_graph(1)});
    CHECK_THROWS_AS(block_tree_witness(u.g, u.g), error);
}

namespace {

// vertices of Z4 x Z4 as 4a+b; adjacency from a difference set
graph torus_graph(const std::vector<std::pair<int, int>>& diffs) {
    std::vector<vertex_id> vs;
    edge_list es;
    for (int v = 0; v < 16; ++v) vs.push_back(vid(v));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (auto [da, db] : diffs) {
                const int u = 4 * a + b;
                const int w = 4 * ((a + da + 4) % 4) + ((b + db + 4) % 4);
                if (u < w) es.emplace_back(vid(u), vid(w));
            }
    return graph::from_edges(std::move(vs), es);
}

} // namespace

TEST_CASE("strongly regular mates land in UNKNOWN with the minimal-pair annotation") {
    // Shrikhande graph vs the 4x4 rook's graph: both SRG(16,6,2,2), cospectral
    // with cospectral complements, equal walk profiles, not isomorphic
    graph shrikhande = torus_graph({{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}});
    graph rook = torus_graph({{1, 0}, {2, 0}, {3, 0}, {0, 1}, {0, 2}, {0, 3}});
    REQUIRE(shrikhande.edge_count() == 48);
    REQUIRE(rook.edge_count() == 48);
    REQUIRE_FALSE(find_isomorphism(shrikhande, rook).has_value());

    sieve_report rep = run_sieve(shrikhande, rook);
    CHECK(rep.verdict == verdict_t::unknown);
    bool annotated = false;
    for (const check_record& c : rep.checks)
        if (c.name == "minimal-pair-profile") {
            annotated = true;
            CHECK(c.left == "2-connected");
            CHECK(c.right == "2-connected");
        }
    CHECK(annotated);
}

TEST_CASE("sieve reports are deterministic") {
    union_result c4k1 = disjoint_union(std::vector<graph>{cycle_graph(4), complete_graph(1)});
    sieve_report a = run_sieve(c4k1.g, star_graph(4));
    sieve_report b = run_sieve(c4k1.g, star_graph(4));
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].left == b.checks[i].left);
        CHECK(a.checks[i].passed == b.checks[i].passed);
    }
}

TEST_CASE("verdicts do not depend on the argument order") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 40; ++trial) {
        graph g = random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.35);
        graph h = trial % 2 ? apply_map(g, random_relabel(rng, g))
                            : random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.35);
        CHECK(run_sieve(g, h).verdict == run_sieve(h, g).verdict);
    }
}
