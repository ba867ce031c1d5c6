#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypersub/exponent.hpp"
#include "hypersub/gnp.hpp"
#include "hypersub/hypergraph.hpp"

namespace hypersub {

// Limiting behaviour of an expected-count surrogate Θ(n^x).
enum class AsymptoticVerdict { tends_to_zero, tends_to_infinity, order_constant };

AsymptoticVerdict asymptotic_verdict(const Exponent& x);

struct AsymptoticClass {
    AsymptoticVerdict verdict = AsymptoticVerdict::order_constant;
    Hypergraph witness;  // the strong subgraph attaining the exponent
    Exponent exponent;
};

enum class Outcome { aas_absent, aas_present, inconclusive };

std::string to_string(Outcome o);

struct ContainmentVerdict {
    Outcome outcome = Outcome::inconclusive;
    // The strong subgraph with the smallest exponent (the obstruction when
    // absent, the tightest member otherwise). For a non-edge obstruction in
    // induced mode it is that non-edge as a one-edge hypergraph.
    Hypergraph witness;
    Exponent exponent;
    std::string rule;
};

nlohmann::json to_json(const ContainmentVerdict& v);

// v(h) - sum_r alpha_r e_r(h); -inf when h uses a level with p_r = 0.
Exponent mu_s_exponent(const Hypergraph& h, const PowerLawSequence& p);
// Same with p'_r in place of p_r.
Exponent mu_w_exponent(const Hypergraph& h, const PowerLawSequence& p);

// The strong subgraph of h minimising the mu_s (resp. mu_w) exponent.
AsymptoticClass min_strong_class(const Hypergraph& h, const PowerLawSequence& p);
AsymptoticClass min_weak_class(const Hypergraph& h, const PowerLawSequence& p);

inline constexpr std::size_t kMaxThresholdVertices = 20;

// Strong containment. With `induced`, the verdict is for induced strong
// copies, which coincides when every level has p_r <= 1 - eps and is
// inconclusive otherwise.
ContainmentVerdict classify_strong(const Hypergraph& h, const PowerLawSequence& p, bool induced = false);
ContainmentVerdict classify_weak(const Hypergraph& h, const PowerLawSequence& p);
ContainmentVerdict classify_induced_weak(const Hypergraph& h, const PowerLawSequence& p);

// Pads every r-edge with padding[r] fresh vertices (missing sizes: 0).
Hypergraph construct_J(const Hypergraph& h, const std::map<std::size_t, std::size_t>& padding);
// Padding i(r) = the dominant term of p'_r, smallest i on ties. Throws
// InputError when some edge size has p'_r = 0.
Hypergraph construct_J(const Hypergraph& h, const PowerLawSequence& p);

// True iff some injective vertex map sends every edge of h1 into a distinct
// edge of h2 (as a subset). `spanning` additionally requires v(h1) = v(h2).
bool is_subedge_system(const Hypergraph& h1, const Hypergraph& h2, bool spanning = false);

inline constexpr std::size_t kMaxCoverVertices = 7;

// Isomorphism classes of hypergraphs H on V(g), minimal under the subedge
// system order, with g a spanning subgraph of the 2-section of H.
std::vector<Hypergraph> minimal_2section_covers(const Graph& g);

// Appearance of g in the 2-section of H(n,p): present if some minimal cover
// is weakly present, absent if all are weakly absent.
ContainmentVerdict classify_2section(const Graph& g, const PowerLawSequence& p);

enum class ContainmentKind { strong, weak };

// Fraction of `trials` samples of H(n,p) containing `pattern`.
double presence_frequency(const Hypergraph& pattern, const NumericSequence& p, std::uint64_t n,
                          std::size_t trials, std::uint64_t seed, ContainmentKind kind,
                          unsigned threads = 1);

}  // namespace hypersub
