#include <numeric>
#include <sstream>

#include "doctest.h"

#include "hypersub/core.hpp"
#include "hypersub/edge_list.hpp"
#include "hypersub/error.hpp"
#include "test_support.hpp"

using namespace hypersub;

TEST_CASE("hypergraph rejects malformed edges and dedups equal sets") {
    Hypergraph h(4);
    CHECK(h.add_edge({2, 0, 1}).has_value());
    CHECK_FALSE(h.add_edge({1, 2, 0}).has_value());
    CHECK(h.num_edges() == 1);
    CHECK_THROWS_AS(h.add_edge(std::span<const Vertex>{}), std::invalid_argument);
    CHECK_THROWS_AS(h.add_edge({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(h.add_edge({4}), std::invalid_argument);

    auto e = h.edge(0);
    CHECK(std::vector<Vertex>(e.begin(), e.end()) == std::vector<Vertex>{0, 1, 2});
    for (Vertex v : {0u, 1u, 2u}) CHECK(h.degree(v) == 1);
    CHECK(h.degree(3) == 0);
}

TEST_CASE("graph requires 2-uniform edges") {
    CHECK_THROWS_AS(Graph(Hypergraph(3, {{0, 1, 2}})), std::invalid_argument);
    Graph g(Hypergraph(3, {{0, 1}}));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("two_section") {
    SUBCASE("single 3-edge becomes a triangle") {
        auto g = two_section(Hypergraph(3, {{0, 1, 2}}));
        CHECK(g == Graph(Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}})));
    }
    SUBCASE("H_2 with the same 2-section gives H_1") {
        Hypergraph h2(4, {{1, 2}, {2, 3}, {0, 1, 3}});
        Graph h1(Hypergraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}}));
        CHECK(two_section(h2) == h1);
        // H_3: two 3-edges sharing the diagonal.
        CHECK(two_section(Hypergraph(4, {{0, 1, 3}, {1, 2, 3}})) == h1);
    }
    SUBCASE("empty edge set and singleton edges") {
        CHECK(two_section(Hypergraph(5)).num_edges() == 0);
        CHECK(two_section(Hypergraph(2, {{0}, {1}})).num_edges() == 0);
    }
}

TEST_CASE("induced_strong") {
    Hypergraph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    std::vector<Vertex> s{0, 2};
    auto sub = induced_strong(tri, s);
    CHECK(sub.graph == Hypergraph(2, {{0, 1}}));
    CHECK(sub.to_parent == s);

    Hypergraph h(3, {{0, 1, 2}, {0, 1}});
    std::vector<Vertex> s01{0, 1};
    CHECK(induced_strong(h, s01).graph == Hypergraph(2, {{0, 1}}));

    std::vector<Vertex> all{0, 1, 2};
    CHECK(induced_strong(h, all).graph == h);
}

TEST_CASE("induced_weak") {
    SUBCASE("weak-subgraph example: the chosen set induces H_1") {
        // Vertices 0..3 form the square, 4 = u, 5,6 = w1,w2.
        Hypergraph h2(7, {{1, 2}, {0, 1, 4}, {0, 3, 5, 6, 2}});
        Hypergraph h1(4, {{1, 2}, {0, 1}, {0, 2, 3}});
        std::vector<Vertex> square{0, 1, 2, 3};
        CHECK(induced_weak(h2, square).graph == h1);
        CHECK(induced_strong(h2, square).graph == Hypergraph(4, {{1, 2}}));
    }
    SUBCASE("coinciding intersections are deduplicated") {
        Hypergraph h(3, {{0, 1, 2}, {0, 1}});
        std::vector<Vertex> s{0, 1};
        CHECK(induced_weak(h, s).graph == Hypergraph(2, {{0, 1}}));
    }
    SUBCASE("empty intersections are dropped") {
        Hypergraph h(4, {{2, 3}, {0, 2}});
        std::vector<Vertex> s{0, 1};
        CHECK(induced_weak(h, s).graph == Hypergraph(2, {{0}}));
    }
    SUBCASE("full vertex set is the identity") {
        Hypergraph h(4, {{0, 1, 2}, {2, 3}, {1}});
        std::vector<Vertex> all{0, 1, 2, 3};
        CHECK(induced_weak(h, all).graph == h);
    }
}

TEST_CASE("truncate") {
    Hypergraph h(8, {{0, 1}, {2, 3, 4, 5, 6, 7}});
    auto t = truncate(h, 5);
    CHECK(t.graph == Hypergraph(2, {{0, 1}}));
    CHECK(t.to_parent == std::vector<Vertex>{0, 1});

    Hypergraph small(5, {{0, 1}, {3, 4}});
    auto same = truncate(small, 5);
    CHECK(same.graph == Hypergraph(4, {{0, 1}, {2, 3}}));
    CHECK(same.to_parent == std::vector<Vertex>{0, 1, 3, 4});

    auto gone = truncate(Hypergraph(6, {{0, 1, 2, 3, 4, 5}}), 5);
    CHECK(gone.graph.num_vertices() == 0);
    CHECK(gone.graph.num_edges() == 0);

    CHECK_THROWS_AS(truncate(h, 0), std::invalid_argument);
}

TEST_CASE("profiles") {
    auto p = profiles(Hypergraph(3, {{0, 1, 2}}));
    CHECK(p.degree_histogram == std::map<std::size_t, std::size_t>{{1, 3}});
    CHECK(p.size_histogram == std::map<std::size_t, std::size_t>{{3, 1}});

    p = profiles(Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(p.degree_histogram == std::map<std::size_t, std::size_t>{{2, 3}});
    CHECK(p.size_histogram == std::map<std::size_t, std::size_t>{{2, 3}});

    p = profiles(Hypergraph(4, {{0, 1}, {2, 3}, {0, 1, 2, 3}}));
    CHECK(p.degree_histogram == std::map<std::size_t, std::size_t>{{2, 4}});
    CHECK(p.size_histogram == std::map<std::size_t, std::size_t>{{2, 2}, {4, 1}});
}

TEST_CASE("core invariants on random hypergraphs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        auto h = testing::random_hypergraph(n, rng() % 12, 1, 5, rng);
        auto s = testing::random_vertex_subset(n, rng);

        auto strong = induced_strong(h, s).graph;
        auto weak = induced_weak(h, s).graph;
        for (EdgeId e = 0; e < strong.num_edges(); ++e) CHECK(weak.has_edge(strong.edge(e)));

        auto lhs = two_section(strong);
        auto rhs = induced_strong(two_section(h).hypergraph(), s).graph;
        for (EdgeId e = 0; e < lhs.num_edges(); ++e) CHECK(rhs.has_edge(lhs.hypergraph().edge(e)));

        const std::size_t max_size = 1 + rng() % 5;
        auto once = truncate(h, max_size).graph;
        CHECK(truncate(once, max_size).graph == once);

        auto p = profiles(h);
        std::size_t degree_sum = 0, size_sum = 0;
        for (auto [d, c] : p.degree_histogram) degree_sum += d * c;
        for (auto [sz, c] : p.size_histogram) size_sum += sz * c;
        CHECK(degree_sum == size_sum);
    }
}

TEST_CASE("edge list ingestion") {
    SUBCASE("dedup of set-equal lines") {
        std::istringstream in("a b\nb a\na b c\n");
        auto d = read_edge_list(in);
        CHECK(d.graph.num_vertices() == 3);
        CHECK(d.graph.edge_count_by_size() == std::map<std::size_t, std::size_t>{{2, 1}, {3, 1}});
        CHECK(d.duplicate_edges == 1);
        CHECK(d.lines_read == 3);
        CHECK(d.vertex_names == std::vector<std::string>{"a", "b", "c"});
    }
    SUBCASE("comments and blank lines are skipped") {
        std::istringstream in("# header\n\n  x@y.com  z@y.com \n   # indented comment\n");
        auto d = read_edge_list(in);
        CHECK(d.graph.num_edges() == 1);
        CHECK(d.graph.num_vertices() == 2);
    }
    SUBCASE("repeated token within a line names the line") {
        std::istringstream in("a b\nc d c\n");
        try {
            read_edge_list(in);
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        auto d = read_edge_list(in);
        CHECK(d.graph.num_vertices() == 0);
        CHECK(d.graph.num_edges() == 0);
    }
    SUBCASE("write then read preserves structure") {
        Hypergraph h(5, {{0, 1}, {1, 2, 3}, {4}});
        std::ostringstream out;
        write_edge_list(out, h);
        std::istringstream in(out.str());
        CHECK(read_edge_list(in).graph == h);
    }
}
