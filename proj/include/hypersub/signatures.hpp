#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypersub/gnp.hpp"
#include "hypersub/hypergraph.hpp"

namespace hypersub {

inline constexpr std::size_t kMinSignatureOrder = 2;
inline constexpr std::size_t kMaxSignatureOrder = 5;

// Edge counts (e_2, ..., e_k) of a hypergraph on k vertices. Size-1 edges
// are not recorded.
struct Signature {
    std::size_t k = 0;
    std::vector<std::uint32_t> counts;  // counts[r - 2] = e_r

    std::uint32_t operator[](std::size_t r) const { return counts[r - 2]; }
    std::string to_string() const;  // "1,2,0"

    // Throws InputError unless 2 <= k and every e_r <= C(k, r).
    static Signature from_counts(std::size_t k, std::vector<std::uint32_t> counts);
    static Signature parse(std::size_t k, const std::string& text);
    static Signature of(const Hypergraph& h);

    friend bool operator==(const Signature&, const Signature&) = default;
    friend std::strong_ordering operator<=>(const Signature& a, const Signature& b) {
        if (auto c = a.k <=> b.k; c != 0) return c;
        return a.counts <=> b.counts;
    }
};

struct SignatureWeights {
    // Labelled hypergraphs on [k] with this signature whose 2-section is K_k.
    std::uint64_t labelled = 0;
    // Sum of aut(H) over their isomorphism classes.
    std::uint64_t aut_literal = 0;

    friend bool operator==(const SignatureWeights&, const SignatureWeights&) = default;
};

using WeightTable = std::map<Signature, SignatureWeights>;

// Feasible signatures of order k with both weights. Computed once per k and
// kept in memory.
const WeightTable& signature_weights(std::size_t k);

std::vector<Signature> enumerate_feasible(std::size_t k);
std::uint64_t labelled_weight(const Signature& sig);  // 0 when infeasible
std::uint64_t aut_literal_weight(const Signature& sig);

// prod_r (C(k,r) + 1): every signature vector within bounds.
std::uint64_t signature_lattice_size(std::size_t k);
// prod_r C(C(k,r), e_r): labelled hypergraphs with this signature, feasible or not.
std::uint64_t labelled_total(const Signature& sig);

// Weight cache: a JSON list of {"k", "signature", "weight", "aut_weight"}.
nlohmann::json weights_to_json(std::size_t k, const WeightTable& table);
std::map<std::size_t, WeightTable> weights_from_json(const nlohmann::json& j);
// Checks the entries for k in the cache file at `path` against the
// enumeration (InputError on mismatch) and appends them when missing.
const WeightTable& signature_weights_cached(std::size_t k, const std::string& path);

enum class WeightMode { labelled, aut_literal };

std::string to_string(WeightMode m);
WeightMode weight_mode_from_string(const std::string& s);

struct OriginationEntry {
    Signature signature;
    std::uint64_t weight = 0;
    double probability = 0.0;
    double log_mass = 0.0;  // unnormalised, natural log
    std::size_t rank = 0;   // R_theory, 1-based
    bool tied = false;      // equal probability to a neighbour in the ranking
};

struct OriginationTable {
    std::size_t k = 0;
    WeightMode mode = WeightMode::labelled;
    std::map<std::size_t, double> extension_probability;  // p'''_r for r = 2..k
    double log_normalizer = 0.0;  // log of the total unnormalised mass
    std::vector<OriginationEntry> entries;  // ranked order

    const OriginationEntry* find(const Signature& s) const;
};

// Probability that a K_k copy in the 2-section of H(n,p) originates from each
// feasible signature. Throws InputError when M < k or p_2..p_k are all zero.
OriginationTable origination_distribution(std::size_t k, const NumericSequence& p, std::uint64_t n,
                                          WeightMode mode = WeightMode::labelled);

// Signatures with their R_theory rank: descending probability, equal
// probabilities in ascending lexicographic order.
std::vector<std::pair<Signature, std::size_t>> rank(const OriginationTable& table);

// CSV columns: signature, weight, probability, rank.
void write_origination_csv(std::ostream& out, const OriginationTable& table);
nlohmann::json to_json(const OriginationTable& table);

}  // namespace hypersub
