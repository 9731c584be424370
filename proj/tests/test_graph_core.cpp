#include <doctest.h>

#include <random>

#include "graph.hpp"
#include "int_matrix.hpp"
#include "testkit.hpp"

using namespace blocksieve;
using namespace testkit;

TEST_CASE("adjacency matrix basics") {
    graph k2 = complete_graph(2);
    int_matrix a = adjacency_matrix(k2);
    CHECK(a.at(0, 0) == 0);
    CHECK(a.at(0, 1) == 1);
    CHECK(a.at(1, 0) == 1);

    graph k1 = complete_graph(1);
    CHECK(adjacency_matrix(k1).dim() == 1);
    CHECK(adjacency_matrix(k1).at(0, 0) == 0);

    graph p3 = path_graph(3);
    int_matrix m = adjacency_matrix(p3);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 2) == 1);
    CHECK(m.at(0, 2) == 0);
    CHECK(m.at(0, 0) == 0);
}

TEST_CASE("graph construction rejects loops and duplicates") {
    CHECK_THROWS_AS(make({0, 1}, {{0, 0}}), error);
    CHECK_THROWS_AS(graph::from_edges({vid(0), vid(0)}, {}), error);
    CHECK_THROWS_AS(make({0, 1}, {{0, 2}}), error);
    // duplicate edges collapse
    graph g = make({0, 1}, {{0, 1}, {1, 0}});
    CHECK(g.edge_count() == 1);
}

TEST_CASE("connected components") {
    union_result u = disjoint_union(std::vector<graph>{complete_graph(2), complete_graph(1)});
    auto comps = connected_components(u.g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 2);
    CHECK(comps[1].size() == 1);

    CHECK(connected_components(cycle_graph(4)).size() == 1);

    graph edgeless = make({0, 1, 2}, {});
    CHECK(connected_components(edgeless).size() == 3);
}

TEST_CASE("distance matrix and eccentricity") {
    graph p3 = path_graph(3);
    auto d = distance_matrix(p3);
    CHECK(d[0][2] == distance_value{2});
    CHECK(d[0][0] == distance_value{0});
    CHECK(d[2][0] == distance_value{2});

    union_result u = disjoint_union(std::vector<graph>{complete_graph(2), complete_graph(1)});
    auto dd = distance_matrix(u.g);
    CHECK_FALSE(dd[0][2].has_value());

    CHECK(eccentricity(p3, vid(1)) == distance_value{1});
    CHECK(eccentricity(p3, vid(0)) == distance_value{2});
    CHECK_FALSE(eccentricity(u.g, vid(0, 0)).has_value());
    CHECK_THROWS_AS(eccentricity(p3, vid(42)), error);

    // BFS oracle over all pairs of C5: distances land in {1, 2}
    graph c5 = cycle_graph(5);
    auto d5 = distance_matrix(c5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if (i != j) {
                REQUIRE(d5[i][j].has_value());
                CHECK(*d5[i][j] >= 1);
                CHECK(*d5[i][j] <= 2);
            }
}

TEST_CASE("distance recurrence: d(x,y) = 1 + min over neighbours") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        graph g = random_connected_graph(rng, 7, 0.3);
        auto d = distance_matrix(g);
        for (std::size_t x = 0; x < 7; ++x)
            for (std::size_t y = 0; y < 7; ++y) {
                if (x == y) continue;
                std::int64_t best = INT64_MAX;
                for (std::size_t z : g.neighbors_at(x)) best = std::min(best, 1 + *d[z][y]);
                CHECK(*d[x][y] == best);
            }
    }
}

TEST_CASE("center") {
    graph p4 = path_graph(4);
    CHECK(center(p4) == vertex_set{vid(1), vid(2)});
    CHECK(center(star_graph(3)) == vertex_set{vid(0)});
    CHECK(center(cycle_graph(4)).size() == 4);
    union_result u = disjoint_union(std::vector<graph>{complete_graph(2), complete_graph(1)});
    CHECK_THROWS_AS(center(u.g), error);
}

TEST_CASE("center members share the minimum eccentricity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        graph g = random_connected_graph(rng, 3 + static_cast<int>(rng() % 6), 0.35);
        vertex_set z = center(g);
        REQUIRE_FALSE(z.empty());
        auto e0 = eccentricity(g, z.front());
        for (vertex_id v : z) CHECK(eccentricity(g, v) == e0);
        for (vertex_id v : g.vertices()) CHECK(*eccentricity(g, v) >= *e0);
    }
}

TEST_CASE("char_poly on fixed cases") {
    CHECK(char_poly(adjacency_matrix(complete_graph(1))) == std::vector<bigint>{0, 1});
    CHECK(char_poly(adjacency_matrix(complete_graph(2))) == std::vector<bigint>{-1, 0, 1});
    // x^4 - 4x^2, frozen from the symbolic determinant oracle
    CHECK(brute_char_poly(adjacency_matrix(cycle_graph(4))) ==
          std::vector<bigint>{0, 0, -4, 0, 1});
    CHECK(char_poly(adjacency_matrix(cycle_graph(4))) == std::vector<bigint>{0, 0, -4, 0, 1});
}

TEST_CASE("char_poly agrees with the symbolic determinant oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        graph g = random_graph(rng, n, 0.5);
        CHECK(char_poly(adjacency_matrix(g)) == brute_char_poly(adjacency_matrix(g)));
    }
    // non-adjacency integer matrices as well
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng() % 3;
        int_matrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = static_cast<std::int64_t>(rng() % 11) - 5;
        CHECK(char_poly(m) == brute_char_poly(m));
    }
}

TEST_CASE("char_poly is invariant under permutation conjugation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        graph g = random_graph(rng, n, 0.4);
        graph h = apply_map(g, random_relabel(rng, g));
        CHECK(char_poly(adjacency_matrix(g)) == char_poly(adjacency_matrix(h)));
    }
}

TEST_CASE("induced subgraph") {
    graph p3 = path_graph(3);
    graph sub = induced_subgraph(p3, vertex_set{vid(0), vid(1)});
    CHECK(sub.vertex_count() == 2);
    CHECK(sub.edge_count() == 1);

    graph c4 = cycle_graph(4);
    CHECK(induced_subgraph(c4, c4.vertices()) == c4);

    graph opposite = induced_subgraph(c4, vertex_set{vid(0), vid(2)});
    CHECK(opposite.edge_count() == 0);

    CHECK_THROWS_AS(induced_subgraph(p3, vertex_set{vid(9)}), error);
}

TEST_CASE("disjoint union namespaces and provenance") {
    graph k2 = complete_graph(2);
    union_result single = disjoint_union(std::vector<graph>{k2});
    CHECK(single.g.vertex_count() == 2);
    CHECK(single.g.edge_count() == 1);
    CHECK(single.g.vertices().front().ns == 0);
    CHECK(single.provenance.at(vid(0, 0)) == std::make_pair(std::size_t{0}, vid(0)));

    union_result two = disjoint_union(std::vector<graph>{complete_graph(1), complete_graph(1)});
    CHECK(two.g.vertex_count() == 2);
    CHECK(two.g.edge_count() == 0);

    union_result mix = disjoint_union(std::vector<graph>{path_graph(3), complete_graph(2)});
    CHECK(mix.g.vertex_count() == 5);
    CHECK(mix.g.edge_count() == 3);
    CHECK(connected_components(mix.g).size() == 2);
    CHECK(mix.provenance.at(vid(1, 1)) == std::make_pair(std::size_t{1}, vid(1)));
}

TEST_CASE("walk count tensor") {
    graph k2 = complete_graph(2);
    auto t = walk_count_tensor(k2, 2);
    CHECK(t[0] == int_matrix::identity(2));
    CHECK(t[1] == adjacency_matrix(k2));
    CHECK(t[2].at(0, 0) == 1);
    CHECK(t[2].at(0, 1) == 0);

    graph c3 = cycle_graph(3);
    auto t3 = walk_count_tensor(c3, 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(t3[3].at(i, i) == 2);
}

TEST_CASE("closed walk counts match brute-force enumeration") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6); // up to 7
        graph g = random_graph(rng, n, 0.45);
        auto tensor = walk_count_tensor(g, 6);
        for (std::size_t i = 0; i <= 6; ++i)
            for (std::size_t x = 0; x < g.vertex_count(); ++x) {
                const vertex_id v = g.vertex_at(x);
                CHECK(tensor[i].at(x, x) ==
                      bigint(brute_walks(g, i, v, v, v, -1))); // any visit count: v is start
            }
    }
}
