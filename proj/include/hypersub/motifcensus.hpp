#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"

#include "hypersub/gnp.hpp"
#include "hypersub/hypergraph.hpp"
#include "hypersub/signatures.hpp"

namespace hypersub {

inline constexpr std::uint64_t kDefaultCliqueCap = 100'000'000;

struct CliqueOptions {
    std::uint64_t cap = kDefaultCliqueCap;  // GuardError once more cliques than this are emitted
    unsigned threads = 1;
};

// Calls `visit` once per k-clique of the 2-section of h, with the clique's
// vertices sorted ascending. Cliques are found at their lowest vertex in a
// degeneracy order, so the visiting order is fixed by h alone. k in 3..5.
void for_each_k_clique(const Hypergraph& h, std::size_t k,
                       const std::function<void(std::span<const Vertex>)>& visit,
                       std::uint64_t cap = kDefaultCliqueCap);

// All k-cliques of the 2-section, sorted lexicographically.
std::vector<std::vector<Vertex>> list_k_cliques(const Hypergraph& h, std::size_t k,
                                                const CliqueOptions& options = {});

// Signature of the weak subhypergraph induced on s (size-1 traces ignored).
Signature observed_signature(const Hypergraph& h, std::span<const Vertex> s);

// Observed signature counts over every k-clique of the 2-section. Throws
// std::logic_error if a clique yields an infeasible signature.
struct SignatureTally {
    std::size_t k = 0;
    std::uint64_t total = 0;
    std::map<Signature, std::uint64_t> counts;

    SignatureTally& operator+=(const SignatureTally& other);
};

SignatureTally tally_signatures(const Hypergraph& h, std::size_t k, const CliqueOptions& options = {});

struct CensusEntry {
    Signature signature;
    std::uint64_t count = 0;
    double observed_probability = 0.0;
    double theory_probability = 0.0;
    std::size_t rank_theory = 0;           // R_theory over all feasible signatures
    std::size_t rank_theory_observed = 0;  // theory order restricted to observed signatures
    std::size_t rank_observed = 0;
    bool tied_observed = false;  // shares its count with a neighbour in R_observed
};

struct UnobservedSignature {
    Signature signature;
    std::size_t rank_theory = 0;
    double theory_probability = 0.0;
};

struct CensusReport {
    std::size_t k = 0;
    std::uint64_t total_cliques = 0;
    WeightMode mode = WeightMode::labelled;
    std::vector<CensusEntry> entries;  // by R_observed
    std::vector<UnobservedSignature> unobserved;  // by R_theory
    // Spearman correlation of R_theory/observed against R_observed; 1 with
    // fewer than two observed signatures.
    double spearman = 1.0;
    bool has_observed_ties = false;

    const CensusEntry* find(const Signature& s) const;
};

CensusReport census_from_tally(const SignatureTally& tally, const OriginationTable& theory);
CensusReport census(const Hypergraph& h, std::size_t k, const NumericSequence& p, std::uint64_t n,
                    const CliqueOptions& options = {}, WeightMode mode = WeightMode::labelled);

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;
    std::size_t bins = 0;  // after merging sparse bins
};

// Goodness of fit of the observed counts against the theory table over the
// `top` most likely signatures plus a remainder bin. Bins with expected count
// below `min_expected` are folded into the remainder.
ChiSquareResult chi_square_top(const SignatureTally& tally, const OriginationTable& theory,
                               std::size_t top = 5, double min_expected = 5.0);

// Columns: signature, count, observed_probability, theory_probability,
// rank_theory, rank_theory_observed, rank_observed, tied.
void write_census_csv(std::ostream& out, const CensusReport& report);
// Columns: rank_theory_observed, rank_observed, signature.
void write_rank_scatter(std::ostream& out, const CensusReport& report);
nlohmann::json to_json(const CensusReport& report);

}  // namespace hypersub
