#include "hypersub/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hypersub {

namespace {

constexpr Vertex kAbsent = static_cast<Vertex>(-1);

std::vector<Vertex> local_index(const Hypergraph& h, std::span<const Vertex> s) {
    std::vector<Vertex> local(h.num_vertices(), kAbsent);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= h.num_vertices()) throw std::invalid_argument("vertex subset out of range");
        if (local[s[i]] != kAbsent) throw std::invalid_argument("vertex subset repeats a vertex");
        local[s[i]] = static_cast<Vertex>(i);
    }
    return local;
}

}  // namespace

Graph two_section(const Hypergraph& h) {
    const std::size_t n = h.num_vertices();
    std::vector<std::vector<Vertex>> nbrs(n);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto vs = h.edge(e);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) nbrs[vs[i]].push_back(vs[j]);
    }
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        auto& list = nbrs[u];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (Vertex v : list) g.add_edge(u, v);
    }
    return g;
}

Subhypergraph induced_strong(const Hypergraph& h, std::span<const Vertex> s) {
    auto local = local_index(h, s);
    Subhypergraph out{Hypergraph(s.size()), {s.begin(), s.end()}};
    std::vector<Vertex> mapped;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto vs = h.edge(e);
        if (std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return local[v] != kAbsent; })) {
            mapped.clear();
            for (Vertex v : vs) mapped.push_back(local[v]);
            out.graph.add_edge(mapped);
        }
    }
    return out;
}

Subhypergraph induced_weak(const Hypergraph& h, std::span<const Vertex> s) {
    auto local = local_index(h, s);
    Subhypergraph out{Hypergraph(s.size()), {s.begin(), s.end()}};
    std::vector<EdgeId> touched;
    for (Vertex v : s)
        for (EdgeId e : h.incident(v)) touched.push_back(e);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::vector<Vertex> mapped;
    for (EdgeId e : touched) {
        mapped.clear();
        for (Vertex v : h.edge(e))
            if (local[v] != kAbsent) mapped.push_back(local[v]);
        out.graph.add_edge(mapped);  // repeats collapse
    }
    return out;
}

Subhypergraph remove_isolated(const Hypergraph& h) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < h.num_vertices(); ++v)
        if (h.degree(v) > 0) keep.push_back(v);
    return induced_strong(h, keep);
}

Subhypergraph truncate(const Hypergraph& h, std::size_t max_size) {
    if (max_size < 1) throw std::invalid_argument("max_size must be at least 1");
    Hypergraph kept(h.num_vertices());
    for (EdgeId e = 0; e < h.num_edges(); ++e)
        if (h.edge_size(e) <= max_size) kept.add_edge(h.edge(e));
    return remove_isolated(kept);
}

Profiles profiles(const Hypergraph& h) {
    Profiles p;
    for (Vertex v = 0; v < h.num_vertices(); ++v) ++p.degree_histogram[h.degree(v)];
    p.size_histogram = h.edge_count_by_size();
    return p;
}

}  // namespace hypersub
