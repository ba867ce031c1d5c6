#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "hypersub/hypergraph.hpp"

namespace hypersub {

// Patterns above this many vertices are refused with GuardError.
inline constexpr std::size_t kMaxPatternVertices = 12;

enum class SearchMode { exists, count, list };

// Injective map from pattern vertices to host vertices. Weak embeddings also
// carry, per pattern edge, a host edge whose trace on the image is that edge.
struct Embedding {
    std::vector<Vertex> vertex_map;
    std::vector<EdgeId> witnesses;
};

struct SearchOptions {
    unsigned threads = 1;
    // list mode stops after this many distinct copies
    std::size_t list_limit = std::numeric_limits<std::size_t>::max();
};

struct CopySearchResult {
    bool found = false;
    // Copies up to pattern symmetry: labelled embeddings / aut(pattern).
    // Filled in count mode only.
    std::uint64_t count = 0;
    // One embedding per distinct copy (list mode), in deterministic order.
    std::vector<Embedding> copies;
};

// phi is a strong embedding when phi(f) is a host edge for every pattern
// edge f.
CopySearchResult find_strong_copies(const Hypergraph& pattern, const Hypergraph& host,
                                    SearchMode mode, const SearchOptions& options = {});

// phi is a weak embedding when every pattern edge f has a host edge g with
// g ∩ phi(V(pattern)) = phi(f).
CopySearchResult find_weak_copies(const Hypergraph& pattern, const Hypergraph& host,
                                  SearchMode mode, const SearchOptions& options = {});

// Number of labelled embeddings (no division by automorphisms).
std::uint64_t count_strong_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                                      const SearchOptions& options = {});
std::uint64_t count_weak_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                                    const SearchOptions& options = {});

// Vertex permutations mapping the edge set onto itself. Guarded at
// kMaxPatternVertices.
std::uint64_t automorphism_count(const Hypergraph& h);

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b);

// Cheap isomorphism invariant (vertex count, size histogram, sorted vertex
// profiles); equal keys are necessary for isomorphism.
std::vector<std::uint64_t> isomorphism_invariant(const Hypergraph& h);

// Reduces a list to one representative per isomorphism class, keeping the
// first occurrence of each class in input order.
std::vector<Hypergraph> isomorphism_classes(const std::vector<Hypergraph>& items);

struct StrongSubgraphOptions {
    // Keep only members with at least one edge and no isolated vertex.
    bool edge_spanning_only = false;
    // GuardError when the number of (vertex set, edge subset) pairs exceeds this.
    std::uint64_t max_candidates = std::uint64_t{1} << 22;
};

inline constexpr std::size_t kMaxEnumerationVertices = 10;

// Isomorphism classes of strong subgraphs (vertex subset S, any subset of the
// edges inside S) with S nonempty.
std::vector<Hypergraph> enumerate_strong_subgraphs(const Hypergraph& h,
                                                   const StrongSubgraphOptions& options = {});

}  // namespace hypersub
