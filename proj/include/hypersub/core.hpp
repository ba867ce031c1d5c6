#pragma once

#include <cstddef>
#include <map>
#include <span>

#include "hypersub/hypergraph.hpp"

namespace hypersub {

// [H]_2: {u,v} is an edge iff some hyperedge contains both. Size-1 edges
// contribute nothing.
Graph two_section(const Hypergraph& h);

// H_s[S]: vertex set S (local ids follow the order of `s`), edges of h
// contained in S.
Subhypergraph induced_strong(const Hypergraph& h, std::span<const Vertex> s);

// H_w[S]: the distinct nonempty intersections e ∩ S over all edges e.
Subhypergraph induced_weak(const Hypergraph& h, std::span<const Vertex> s);

// Drops vertices contained in no edge and compacts ids (order preserved).
Subhypergraph remove_isolated(const Hypergraph& h);

// Drops edges larger than `max_size`, then removes isolated vertices.
Subhypergraph truncate(const Hypergraph& h, std::size_t max_size);

struct Profiles {
    std::map<std::size_t, std::size_t> degree_histogram;  // degree -> #vertices
    std::map<std::size_t, std::size_t> size_histogram;    // edge size -> #edges
};

Profiles profiles(const Hypergraph& h);

}  // namespace hypersub
