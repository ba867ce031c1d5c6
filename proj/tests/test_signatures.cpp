#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"

#include "hypersub/core.hpp"
#include "hypersub/error.hpp"
#include "hypersub/isosearch.hpp"
#include "hypersub/signatures.hpp"

using namespace hypersub;

namespace {

const std::map<std::size_t, std::uint64_t> kE5Counts{{2, 5975}, {3, 2128}, {4, 1034}, {5, 561}};

Signature sig(std::vector<std::uint32_t> counts) {
    const std::size_t k = counts.size() + 1;
    return Signature::from_counts(k, std::move(counts));
}

struct LabelledSpace {
    std::vector<std::uint32_t> subsets;  // sizes 2..k
    std::vector<std::uint32_t> pair_cover;
    std::uint32_t all_pairs = 0;
};

LabelledSpace labelled_space(std::size_t k) {
    LabelledSpace s;
    std::vector<std::uint32_t> pairs;
    for (std::uint32_t m = 0; m < (1u << k); ++m)
        if (std::popcount(m) == 2) pairs.push_back(m);
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
        if (std::popcount(m) < 2) continue;
        s.subsets.push_back(m);
        std::uint32_t c = 0;
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if ((pairs[j] & ~m) == 0) c |= 1u << j;
        s.pair_cover.push_back(c);
    }
    s.all_pairs = (1u << pairs.size()) - 1;
    return s;
}

// Exhaustive walk over every labelled hypergraph on [k] with edge sizes 2..k.
std::map<Signature, std::uint64_t> brute_force_weights(std::size_t k) {
    auto s = labelled_space(k);
    std::map<std::vector<std::uint32_t>, std::uint64_t> raw;
    const std::size_t m = s.subsets.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::uint32_t covered = 0;
        std::vector<std::uint32_t> counts(k - 1, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) {
                covered |= s.pair_cover[i];
                ++counts[std::popcount(s.subsets[i]) - 2];
            }
        if (covered == s.all_pairs) ++raw[counts];
    }
    std::map<Signature, std::uint64_t> out;
    for (auto& [c, w] : raw) out[Signature::from_counts(k, c)] = w;
    return out;
}

Hypergraph from_mask(std::size_t k, const LabelledSpace& s, std::uint64_t mask) {
    Hypergraph h(k);
    for (std::size_t i = 0; i < s.subsets.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        std::vector<Vertex> e;
        for (Vertex v = 0; v < k; ++v)
            if (s.subsets[i] >> v & 1) e.push_back(v);
        h.add_edge(e);
    }
    return h;
}

}  // namespace

TEST_CASE("signature basics") {
    CHECK(sig({1, 2, 0}).to_string() == "1,2,0");
    CHECK(Signature::parse(4, "1,2,0") == sig({1, 2, 0}));
    CHECK_THROWS_AS(Signature::parse(4, "1,2"), InputError);
    CHECK_THROWS_AS(Signature::parse(4, "1,x,0"), InputError);
    CHECK_THROWS_AS(sig({7, 0, 0}), InputError);
    CHECK(Signature::of(Hypergraph(4, {{0, 1, 2, 3}, {1}})) == sig({0, 0, 1}));
    CHECK(sig({0, 0, 1}) < sig({1, 0, 0}));
}

TEST_CASE("feasible signature counts") {
    CHECK(signature_lattice_size(4) == 70);
    CHECK(enumerate_feasible(4).size() == 60);
    const auto start = std::chrono::steady_clock::now();
    CHECK(enumerate_feasible(5).size() == 1422);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
    auto two = enumerate_feasible(2);
    REQUIRE(two.size() == 1);
    CHECK(two[0] == sig({1}));
    // e_3 = 1 with any e_2, or all three pairs.
    CHECK(enumerate_feasible(3).size() == 5);
    CHECK_THROWS_AS(enumerate_feasible(6), InputError);
    CHECK_THROWS_AS(enumerate_feasible(1), InputError);
}

TEST_CASE("labelled weights") {
    CHECK(labelled_weight(sig({1, 2, 0})) == 6);
    CHECK(labelled_total(sig({1, 2, 0})) == 36);
    CHECK(labelled_weight(sig({0, 0, 1})) == 1);
    CHECK(labelled_weight(sig({1, 0, 0, 1})) == 10);
    CHECK(labelled_weight(sig({0, 0, 0})) == 0);
    CHECK(labelled_weight(sig({6, 0, 0})) == 1);
    CHECK(labelled_weight(sig({5, 0, 0})) == 0);
}

TEST_CASE("labelled weights match exhaustive enumeration") {
    for (std::size_t k : {2u, 3u, 4u}) {
        auto brute = brute_force_weights(k);
        const auto& table = signature_weights(k);
        REQUIRE(brute.size() == table.size());
        for (const auto& [s, w] : brute) CHECK(table.at(s).labelled == w);
    }
    // The 2^26 labelled space on five vertices.
    auto brute = brute_force_weights(5);
    const auto& table = signature_weights(5);
    REQUIRE(brute.size() == table.size());
    std::uint64_t mismatches = 0, total = 0;
    for (const auto& [s, w] : brute) {
        mismatches += table.at(s).labelled != w;
        total += w;
    }
    CHECK(mismatches == 0);
    std::uint64_t table_total = 0;
    for (const auto& [s, w] : table) table_total += w.labelled;
    CHECK(table_total == total);

    auto four = brute_force_weights(4);
    CHECK(std::accumulate(four.begin(), four.end(), std::uint64_t{0},
                          [](std::uint64_t a, const auto& kv) { return a + kv.second; }) == 1569);
}

TEST_CASE("automorphism-weighted totals match class enumeration") {
    for (std::size_t k : {3u, 4u}) {
        auto space = labelled_space(k);
        std::map<Signature, std::vector<Hypergraph>> by_sig;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << space.subsets.size()); ++mask) {
            std::uint32_t covered = 0;
            for (std::size_t i = 0; i < space.subsets.size(); ++i)
                if (mask >> i & 1) covered |= space.pair_cover[i];
            if (covered != space.all_pairs) continue;
            auto h = from_mask(k, space, mask);
            by_sig[Signature::of(h)].push_back(std::move(h));
        }
        for (auto& [s, members] : by_sig) {
            std::uint64_t aut_sum = 0, labelled = 0;
            for (const auto& cls : isomorphism_classes(members)) {
                const auto aut = automorphism_count(cls);
                aut_sum += aut;
                labelled += (k == 3 ? 6 : 24) / aut;
            }
            CHECK(aut_literal_weight(s) == aut_sum);
            CHECK(labelled_weight(s) == labelled);
        }
    }
    CHECK(aut_literal_weight(sig({0, 0, 0, 1})) == 120);
    CHECK(aut_literal_weight(sig({1, 0, 0, 1})) == 12);
}

TEST_CASE("origination distribution reproduces the theory column") {
    auto p = from_edge_counts(5044, kE5Counts);
    auto t = origination_distribution(5, p, 5044);
    double total = 0;
    for (const auto& e : t.entries) total += e.probability;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(t.entries.size() == 1422);

    auto prob = [&](std::vector<std::uint32_t> c) { return t.find(sig(std::move(c)))->probability; };
    CHECK(std::abs(prob({0, 0, 0, 1}) - 0.98118) < 0.001);
    CHECK(prob({1, 0, 0, 1}) == doctest::Approx(1.8649018608e-02).epsilon(0.03));
    CHECK(prob({2, 0, 0, 1}) == doctest::Approx(1.5950486447e-04).epsilon(0.03));
    CHECK(prob({0, 1, 0, 1}) == doctest::Approx(5.4464266334e-06).epsilon(0.03));
    CHECK(prob({3, 0, 0, 1}) == doctest::Approx(8.0844057265e-07).epsilon(0.03));
    CHECK(prob({4, 0, 1, 0}) == doctest::Approx(4.4141198260e-07).epsilon(0.03));
    CHECK(prob({0, 0, 0, 1}) > 0.98);

    // The fifteen most likely signatures in order.
    const std::vector<std::vector<std::uint32_t>> listed{
        {0, 0, 0, 1}, {1, 0, 0, 1}, {2, 0, 0, 1}, {0, 1, 0, 1}, {3, 0, 0, 1}, {4, 0, 1, 0}, {2, 1, 1, 0}, {1, 1, 0, 1},
        {0, 2, 1, 0}, {1, 0, 2, 0}, {3, 1, 1, 0}, {5, 0, 1, 0}, {4, 2, 0, 0}, {4, 0, 0, 1}, {2, 1, 0, 1}};
    for (std::size_t i = 0; i < listed.size(); ++i) CHECK(t.entries[i].signature == sig(listed[i]));
    auto ranks = rank(t);
    CHECK(ranks[0].second == 1);
    CHECK(ranks[2].first == sig({2, 0, 0, 1}));

    // The ratio of the top two is the single-pair extension odds times C(5,2).
    const double q2 = t.extension_probability.at(2);
    CHECK(prob({1, 0, 0, 1}) / prob({0, 0, 0, 1}) == doctest::Approx(10 * q2 / (1 - q2)).epsilon(1e-9));
}

TEST_CASE("origination ranking ties and degenerate inputs") {
    // k = 2: one feasible signature.
    auto t2 = origination_distribution(2, NumericSequence(2, {{2, 0.3}}), 10);
    REQUIRE(t2.entries.size() == 1);
    CHECK(t2.entries[0].rank == 1);
    CHECK(t2.entries[0].probability == 1.0);

    // p''' = 1/2 at every level with equal weights gives equal masses per
    // total edge count; ties are ordered lexicographically and flagged.
    auto t3 = origination_distribution(3, NumericSequence(3, {{2, 0.5}, {3, 0.5}}), 3);
    bool any_tie = false;
    for (std::size_t i = 1; i < t3.entries.size(); ++i) {
        if (std::abs(t3.entries[i].log_mass - t3.entries[i - 1].log_mass) < 1e-12) {
            any_tie = true;
            CHECK(t3.entries[i - 1].signature < t3.entries[i].signature);
            CHECK(t3.entries[i].tied);
        }
    }
    CHECK(any_tie);

    CHECK_THROWS_AS(origination_distribution(4, NumericSequence(4, {}), 100), InputError);
    CHECK_THROWS_AS(origination_distribution(5, NumericSequence(4, {{2, 0.1}}), 100), InputError);
}

TEST_CASE("aut-literal mode changes the weights but stays normalised") {
    auto p = from_edge_counts(5044, kE5Counts);
    auto t = origination_distribution(5, p, 5044, WeightMode::aut_literal);
    double total = 0;
    for (const auto& e : t.entries) total += e.probability;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(t.find(sig({0, 0, 0, 1}))->weight == 120);
    CHECK(weight_mode_from_string("aut-literal") == WeightMode::aut_literal);
    CHECK_THROWS_AS(weight_mode_from_string("other"), InputError);
}

TEST_CASE("CSV and JSON export") {
    auto t = origination_distribution(4, NumericSequence(4, {{2, 0.01}, {3, 0.001}, {4, 0.001}}), 50);
    std::ostringstream out;
    write_origination_csv(out, t);
    std::istringstream in(out.str());
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "signature,weight,probability,rank");
    CHECK(first.rfind("\"" + t.entries[0].signature.to_string() + "\",", 0) == 0);
    CHECK(first.find("e-") != std::string::npos);
    auto j = to_json(t);
    CHECK(j["signatures"].size() == 60);
    CHECK(j["weight_mode"] == "labelled");
}

TEST_CASE("weight cache round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "hypersub_weight_cache_test.json").string();
    std::filesystem::remove(path);
    auto json = weights_to_json(4, signature_weights(4));
    auto back = weights_from_json(json);
    CHECK(back.at(4) == signature_weights(4));
    std::ofstream(path) << weights_to_json(3, signature_weights(3)).dump();
    const auto& t = signature_weights_cached(4, path);
    CHECK(t.size() == 60);
    auto reread = weights_from_json(nlohmann::json::parse(std::ifstream(path)));
    CHECK(reread.at(3).size() == 5);
    CHECK(reread.at(4).size() == 60);

    auto corrupt = weights_to_json(4, signature_weights(4));
    corrupt[0]["weight"] = 999;
    std::ofstream(path) << corrupt.dump();
    CHECK_THROWS_AS(signature_weights_cached(4, path), InputError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(weights_from_json(nlohmann::json::parse(R"([{"k": 4}])")), InputError);
}

TEST_CASE("total mass matches the sampled clique frequency") {
    // Unnormalised mass summed over feasible signatures is the chance that a
    // fixed 4-set spans K_4 in the 2-section.
    const std::uint64_t n = 200;
    NumericSequence p(4, {{2, 0.1}, {3, 1e-4}, {4, 2e-6}});
    auto t = origination_distribution(4, p, n);
    const double expected = std::exp(t.log_normalizer) * static_cast<double>(binomial_exact(n, 4));

    Hypergraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const int samples = 30;
    std::vector<double> counts;
    for (int s = 0; s < samples; ++s) {
        auto g = two_section(sample(n, p, derive_seed(17, s)));
        counts.push_back(static_cast<double>(find_strong_copies(k4, g.hypergraph(), SearchMode::count).count));
    }
    const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / samples;
    double var = 0;
    for (double c : counts) var += (c - mean) * (c - mean);
    var /= samples - 1;
    const double se = std::sqrt(var / samples);
    MESSAGE("expected " << expected << " observed " << mean << " se " << se);
    CHECK(std::abs(mean - expected) < 3 * se);
}
