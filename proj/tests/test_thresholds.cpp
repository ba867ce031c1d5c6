#include <cmath>

#include "doctest.h"

#include "hypersub/error.hpp"
#include "hypersub/isosearch.hpp"
#include "hypersub/thresholds.hpp"
#include "test_support.hpp"

using namespace hypersub;

namespace {

PowerLawSequence power_law(std::size_t max_size, std::map<std::size_t, Rational> alphas) {
    std::map<std::size_t, PowerLawTerm> terms;
    for (auto [r, a] : alphas) terms[r] = PowerLawTerm{1.0, a};
    return PowerLawSequence(max_size, terms);
}

// alpha = 3/5, 9/10, 17/10, 31/10 for r = 1..4.
PowerLawSequence example_sequence() {
    return power_law(4, {{1, Rational(3, 5)}, {2, Rational(9, 10)}, {3, Rational(17, 10)}, {4, Rational(31, 10)}});
}

// Padding example on v1..v4, relabelled 0..3.
Hypergraph padding_pattern() { return Hypergraph(4, {{0, 1}, {1, 2}, {0, 2, 3}, {2}}); }

const Hypergraph kH1(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}});
const Hypergraph kH2(4, {{1, 2}, {2, 3}, {0, 1, 3}});
const Hypergraph kH3(4, {{0, 1, 3}, {1, 2, 3}});

// Minimum exponent over the explicit list of strong subgraph classes.
Exponent brute_min(const Hypergraph& h, const PowerLawSequence& p, bool weak) {
    Exponent best;
    bool first = true;
    for (const auto& sub : enumerate_strong_subgraphs(h)) {
        auto x = weak ? mu_w_exponent(sub, p) : mu_s_exponent(sub, p);
        if (first || x < best) best = x;
        first = false;
    }
    return best;
}

PowerLawSequence random_power_law(std::mt19937_64& rng) {
    const std::size_t max_size = 1 + rng() % 4;
    std::map<std::size_t, PowerLawTerm> terms;
    for (std::size_t r = 1; r <= max_size; ++r)
        if (rng() % 4) terms[r] = PowerLawTerm{1.0, Rational(static_cast<std::int64_t>(rng() % 40), 8)};
    return PowerLawSequence(max_size, terms);
}

}  // namespace

TEST_CASE("surrogate exponents") {
    auto p = power_law(2, {{2, Rational(9, 11)}});
    Hypergraph g_prime(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
    Hypergraph g(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {3, 4}});
    CHECK(mu_s_exponent(g, p) == Exponent(Rational(1, 11)));
    CHECK(mu_s_exponent(g_prime, p) == Exponent(Rational(-1, 11)));
    CHECK(mu_s_exponent(Hypergraph(1), p) == Exponent(1));
    // Single level: p' has the same exponent as p.
    CHECK(mu_w_exponent(g, p) == mu_s_exponent(g, p));
    // A 3-edge when p_3 = 0.
    CHECK(mu_s_exponent(Hypergraph(3, {{0, 1, 2}}), p).is_neg_infinity());

    auto ex = example_sequence();
    CHECK(ex.prime_exponent(1) == Exponent(Rational(3, 10)));
    CHECK(ex.prime_exponent(2) == Exponent(Rational(-7, 10)));
    CHECK(mu_w_exponent(Hypergraph(1, {{0}}), ex) == Exponent(Rational(13, 10)));

    // G' is denser than G, so G is absent although its own exponent is positive.
    auto verdict = classify_strong(g, p);
    CHECK(verdict.outcome == Outcome::aas_absent);
    CHECK(verdict.exponent == Exponent(Rational(-1, 11)));
    CHECK(are_isomorphic(verdict.witness, g_prime));
}

TEST_CASE("same 2-section, different strong verdicts") {
    auto p = power_law(3, {{2, Rational(3, 4)}, {3, Rational(5, 2)}});
    auto v1 = classify_strong(kH1, p);
    CHECK(v1.outcome == Outcome::aas_present);
    CHECK(v1.exponent == Exponent(Rational(1, 4)));
    auto v2 = classify_strong(kH2, p);
    CHECK(v2.outcome == Outcome::inconclusive);
    CHECK(v2.exponent == Exponent(0));
    auto v3 = classify_strong(kH3, p);
    CHECK(v3.outcome == Outcome::aas_absent);
    CHECK(v3.exponent == Exponent(-1));

    auto j = to_json(v3);
    CHECK(j["verdict"] == "aas_absent");
    CHECK(j["exponent"] == "-1/1");
}

TEST_CASE("weak containment under the padding example") {
    auto p = example_sequence();
    auto h = padding_pattern();
    auto strong = classify_strong(h, p);
    CHECK(strong.outcome == Outcome::aas_absent);
    CHECK(strong.exponent == Exponent(Rational(-1, 10)));
    auto weak = classify_weak(h, p);
    CHECK(weak.outcome == Outcome::aas_present);
    CHECK(weak.exponent == Exponent(Rational(9, 10)));

    // Graph pattern with only p_2: weak and strong agree.
    auto p2 = power_law(2, {{2, Rational(1, 2)}});
    Hypergraph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(classify_weak(tri, p2).outcome == classify_strong(tri, p2).outcome);
    CHECK(classify_weak(tri, p2).exponent == classify_strong(tri, p2).exponent);
}

TEST_CASE("construct_J") {
    auto p = example_sequence();
    auto h = padding_pattern();
    CHECK(p.dominant_padding(1) == 2u);
    CHECK(p.dominant_padding(2) == 1u);
    CHECK(p.dominant_padding(3) == 0u);
    auto j = construct_J(h, p);
    CHECK(j.num_vertices() == 4 + 1 + 1 + 2);
    CHECK(j.edge_count_by_size() == std::map<std::size_t, std::size_t>{{3, 4}});
    CHECK(mu_s_exponent(j, p) == mu_w_exponent(h, p));
    CHECK(classify_strong(j, p).outcome == Outcome::aas_present);

    // Explicit paddings reproduce other choices.
    auto alt = construct_J(h, {{1, 1}, {2, 2}, {3, 0}});
    CHECK(alt.num_vertices() == 4 + 2 + 2 + 1);
    CHECK(alt.edge_count_by_size() == std::map<std::size_t, std::size_t>{{2, 1}, {3, 1}, {4, 2}});

    auto single = power_law(3, {{3, Rational(1)}});
    Hypergraph tri(3, {{0, 1, 2}});
    CHECK(construct_J(tri, single) == tri);
    auto top_only = power_law(4, {{4, Rational(2)}});
    auto padded = construct_J(Hypergraph(2, {{0}}), top_only);
    CHECK(padded.edge_count_by_size() == std::map<std::size_t, std::size_t>{{4, 1}});
    CHECK_THROWS_AS(construct_J(Hypergraph(3, {{0, 1}}), power_law(3, {{1, Rational(1)}})), InputError);
}

TEST_CASE("induced weak containment") {
    auto p = example_sequence();
    auto h = padding_pattern();
    auto v = classify_induced_weak(h, p);
    CHECK(v.outcome == Outcome::aas_absent);
    CHECK(v.exponent == Exponent(Rational(3, 10)));
    CHECK(v.witness.edge_count_by_size() == std::map<std::size_t, std::size_t>{{1, 1}});

    Hypergraph full = h;
    for (Vertex u : {0u, 1u, 3u}) full.add_edge({u});
    CHECK(classify_induced_weak(full, p).outcome == Outcome::aas_present);

    // No non-edges: same as weak.
    auto complete = Hypergraph(2, {{0}, {1}, {0, 1}});
    CHECK(classify_induced_weak(complete, p).outcome == classify_weak(complete, p).outcome);

    // p_1 = 1 at the smallest non-edge size.
    std::map<std::size_t, PowerLawTerm> sure{{1, {1.0, Rational(0)}}, {2, {1.0, Rational(1, 2)}}};
    PowerLawSequence certain(2, sure);
    CHECK(classify_induced_weak(Hypergraph(2, {{0, 1}}), certain).outcome == Outcome::aas_absent);
    std::map<std::size_t, PowerLawTerm> flat{{2, {1.0, Rational(0)}}, {3, {1.0, Rational(5, 2)}}};
    auto v_flat = classify_induced_weak(Hypergraph(3, {{0}, {1}, {2}, {0, 1}}), PowerLawSequence(3, flat));
    CHECK(v_flat.outcome == Outcome::inconclusive);
}

TEST_CASE("induced strong flag") {
    auto p = power_law(3, {{2, Rational(3, 4)}, {3, Rational(5, 2)}});
    CHECK(classify_strong(kH1, p, true).outcome == Outcome::aas_present);
    std::map<std::size_t, PowerLawTerm> sure{{2, {1.0, Rational(0)}}};
    CHECK(classify_strong(kH1, PowerLawSequence(2, sure), true).outcome == Outcome::inconclusive);
    CHECK(classify_strong(kH1, PowerLawSequence(2, sure), false).outcome == Outcome::aas_present);
}

TEST_CASE("minimum over vertex subsets equals the minimum over all strong subgraphs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        auto h = testing::random_hypergraph(n, rng() % 7, 1, 4, rng);
        auto p = random_power_law(rng);
        CHECK(min_strong_class(h, p).exponent == brute_min(h, p, false));
        CHECK(min_weak_class(h, p).exponent == brute_min(h, p, true));
        auto s = min_strong_class(h, p);
        CHECK(mu_s_exponent(s.witness, p) == s.exponent);

        auto strong = classify_strong(h, p);
        auto weak = classify_weak(h, p);
        if (strong.outcome == Outcome::aas_present) CHECK(weak.outcome == Outcome::aas_present);

        bool padded = true;
        for (auto [r, c] : h.edge_count_by_size()) padded = padded && p.dominant_padding(r).has_value();
        if (padded && classify_strong(construct_J(h, p), p).outcome == Outcome::aas_present)
            CHECK(weak.outcome == Outcome::aas_present);
    }
}

TEST_CASE("subedge systems") {
    Hypergraph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    Hypergraph big(3, {{0, 1, 2}});
    // Three edges cannot share one superset edge.
    CHECK_FALSE(is_subedge_system(tri, big));
    CHECK(is_subedge_system(Hypergraph(3, {{0, 1}}), big));
    CHECK(is_subedge_system(Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}),
                            Hypergraph(3, {{0, 1, 2}, {0, 1}, {1, 2}})));
    CHECK_FALSE(is_subedge_system(big, tri));
    CHECK(is_subedge_system(tri, tri));
    CHECK(is_subedge_system(kH2, kH2, true));
    CHECK_FALSE(is_subedge_system(Hypergraph(2, {{0, 1}}), big, true));
    CHECK_THROWS_AS(is_subedge_system(Hypergraph(1), Hypergraph(11)), GuardError);
}

TEST_CASE("minimal 2-section covers") {
    auto tri = minimal_2section_covers(Graph(Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}})));
    REQUIRE(tri.size() == 2);
    bool one_edge = false, three_edges = false;
    for (const auto& c : tri) {
        one_edge |= c.edge_count_by_size() == std::map<std::size_t, std::size_t>{{3, 1}};
        three_edges |= c.edge_count_by_size() == std::map<std::size_t, std::size_t>{{2, 3}};
    }
    CHECK(one_edge);
    CHECK(three_edges);

    CHECK(minimal_2section_covers(Graph(Hypergraph(2, {{0, 1}}))).size() == 1);
    auto path = minimal_2section_covers(Graph(Hypergraph(3, {{0, 1}, {1, 2}})));
    REQUIRE(path.size() == 2);

    // Every cover covers, and none is a subedge system of another.
    auto k4 = minimal_2section_covers(Graph(Hypergraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
    CHECK(k4.size() > 2);
    for (std::size_t i = 0; i < k4.size(); ++i)
        for (std::size_t j = 0; j < k4.size(); ++j)
            if (i != j) CHECK_FALSE(is_subedge_system(k4[i], k4[j], true));

    CHECK_THROWS_AS(minimal_2section_covers(Graph(Hypergraph(3, {{0, 1}}))), InputError);
    CHECK_THROWS_AS(minimal_2section_covers(Graph(8)), GuardError);
}

TEST_CASE("2-section containment") {
    Graph tri(Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(classify_2section(tri, power_law(3, {{3, Rational(19, 10)}})).outcome == Outcome::aas_present);
    CHECK(classify_2section(tri, power_law(3, {{2, Rational(5)}, {3, Rational(5)}})).outcome ==
          Outcome::aas_absent);
    Graph edge(Hypergraph(2, {{0, 1}}));
    CHECK(classify_2section(edge, power_law(2, {{2, Rational(1, 2)}})).outcome == Outcome::aas_present);
}

TEST_CASE("shrinking edges of a weakly present hypergraph keeps it present") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        auto h2 = testing::random_hypergraph(n, 1 + rng() % 5, 1, 4, rng);
        Hypergraph h1(n);
        for (EdgeId e = 0; e < h2.num_edges(); ++e) {
            if (rng() % 4 == 0) continue;
            std::vector<Vertex> sub;
            for (Vertex v : h2.edge(e))
                if (rng() % 3) sub.push_back(v);
            if (!sub.empty()) h1.add_edge(sub);
        }
        REQUIRE(is_subedge_system(h1, h2, true));
        auto p = random_power_law(rng);
        if (min_weak_class(h2, p).exponent.sign() > 0) {
            CHECK(min_weak_class(h1, p).exponent.sign() > 0);
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("sampled presence follows the verdicts") {
    Hypergraph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    const std::uint64_t n = 200;
    auto dense = NumericSequence(2, {{2, std::pow(static_cast<double>(n), -0.7)}});
    auto sparse = NumericSequence(2, {{2, std::pow(static_cast<double>(n), -1.3)}});
    CHECK(presence_frequency(tri, dense, n, 40, 1, ContainmentKind::strong) >= 0.8);
    CHECK(presence_frequency(tri, sparse, n, 40, 1, ContainmentKind::strong) <= 0.1);
    CHECK(presence_frequency(tri, dense, n, 40, 1, ContainmentKind::strong, 3) ==
          presence_frequency(tri, dense, n, 40, 1, ContainmentKind::strong));
}
