#include "hypersub/clustering.hpp"

#include <algorithm>
#include <thread>

#include "hypersub/error.hpp"

namespace hypersub {
namespace {

constexpr Vertex kNoVertex = ~Vertex{0};

// Smallest vertex in both sorted edges; kNoVertex when they are disjoint.
Vertex first_common(std::span<const Vertex> a, std::span<const Vertex> b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return a[i];
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return kNoVertex;
}

// Runs body(v) for every vertex, vertices split into contiguous blocks.
template <class Body>
void for_vertices(std::size_t n, unsigned threads, Body&& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2 * threads) {
        for (Vertex v = 0; v < n; ++v) body(v);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t block = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            const std::size_t lo = t * block, hi = std::min(n, lo + block);
            for (std::size_t v = lo; v < hi; ++v) body(static_cast<Vertex>(v));
        });
    for (auto& th : pool) th.join();
}

// |{x in targets : x adjacent to some member of sources}|
std::size_t reached(const NeighbourIndex& index, const std::vector<Vertex>& sources,
                    const std::vector<Vertex>& targets) {
    std::size_t count = 0;
    for (Vertex x : targets)
        for (Vertex s : sources)
            if (index.adjacent(s, x)) {
                ++count;
                break;
            }
    return count;
}

}  // namespace

void for_each_intersecting_pair(const Hypergraph& h, const std::function<void(EdgeId, EdgeId)>& visit) {
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        auto inc = h.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                if (first_common(h.edge(inc[i]), h.edge(inc[j])) != v) continue;
                visit(std::min(inc[i], inc[j]), std::max(inc[i], inc[j]));
            }
    }
}

NeighbourIndex::NeighbourIndex(const Hypergraph& h) : adj_(h.num_vertices()) {
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto vs = h.edge(e);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                adj_[vs[i]].push_back(vs[j]);
                adj_[vs[j]].push_back(vs[i]);
            }
    }
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
}

bool NeighbourIndex::adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
}

double extra_overlap(const Hypergraph& h, EdgeId ei, EdgeId ej) {
    return extra_overlap(h, NeighbourIndex(h), ei, ej);
}

double extra_overlap(const Hypergraph& h, const NeighbourIndex& index, EdgeId ei, EdgeId ej) {
    if (ei == ej) throw InputError("extra_overlap needs two distinct edges");
    auto a = h.edge(ei), b = h.edge(ej);
    std::vector<Vertex> dij, dji;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(dij));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(dji));
    if (dij.empty() || dji.empty()) return 0.0;
    const auto num = reached(index, dij, dji) + reached(index, dji, dij);
    return static_cast<double>(num) / static_cast<double>(dij.size() + dji.size());
}

namespace {

double local_with(const Hypergraph& h, const NeighbourIndex& index, Vertex v) {
    auto inc = h.incident(v);
    if (inc.size() <= 1) return 0.0;
    double sum = 0;
    for (std::size_t i = 0; i < inc.size(); ++i)
        for (std::size_t j = i + 1; j < inc.size(); ++j) sum += extra_overlap(h, index, inc[i], inc[j]);
    const double pairs = static_cast<double>(inc.size()) * static_cast<double>(inc.size() - 1) / 2.0;
    return sum / pairs;
}

}  // namespace

double hc_local(const Hypergraph& h, Vertex v) { return local_with(h, NeighbourIndex(h), v); }

std::vector<double> hc_local_all(const Hypergraph& h, unsigned threads) {
    NeighbourIndex index(h);
    std::vector<double> out(h.num_vertices(), 0.0);
    for_vertices(h.num_vertices(), threads, [&](Vertex v) { out[v] = local_with(h, index, v); });
    return out;
}

GlobalClustering hc_global(const Hypergraph& h, unsigned threads) {
    NeighbourIndex index(h);
    const std::size_t n = h.num_vertices();
    std::vector<double> sums(n, 0.0);
    std::vector<std::uint64_t> counts(n, 0);
    for_vertices(n, threads, [&](Vertex v) {
        auto inc = h.incident(v);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                if (first_common(h.edge(inc[i]), h.edge(inc[j])) != v) continue;
                sums[v] += extra_overlap(h, index, inc[i], inc[j]);
                ++counts[v];
            }
    });
    GlobalClustering g;
    double total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        total += sums[v];
        g.intersecting_pairs += counts[v];
    }
    if (g.intersecting_pairs > 0) g.value = total / static_cast<double>(g.intersecting_pairs);
    return g;
}

namespace {

// Pairs of neighbours of v that are themselves adjacent.
std::size_t closed_pairs(const Graph& g, Vertex v) {
    const auto& h = g.hypergraph();
    std::vector<Vertex> nb;
    for (EdgeId e : h.incident(v)) {
        auto vs = h.edge(e);
        nb.push_back(vs[0] == v ? vs[1] : vs[0]);
    }
    std::size_t links = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) links += g.has_edge(nb[i], nb[j]);
    return links;
}

double pairs_at(std::size_t degree) { return static_cast<double>(degree) * static_cast<double>(degree - 1) / 2.0; }

}  // namespace

double graph_local_cc(const Graph& g, Vertex v) {
    const auto d = g.hypergraph().degree(v);
    if (d < 2) return 0.0;
    return static_cast<double>(closed_pairs(g, v)) / pairs_at(d);
}

GraphClustering graph_cc(const Graph& g) {
    double local_sum = 0, closed = 0, pairs = 0;
    std::size_t eligible = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const auto d = g.hypergraph().degree(v);
        if (d < 2) continue;
        ++eligible;
        const auto links = closed_pairs(g, v);
        local_sum += static_cast<double>(links) / pairs_at(d);
        closed += static_cast<double>(links);
        pairs += pairs_at(d);
    }
    GraphClustering out;
    if (eligible == 0) return out;
    out.average_local = local_sum / static_cast<double>(eligible);
    out.global = closed / pairs;  // each triangle is closed at all three corners
    return out;
}

ClusteringReport clustering_report(const Hypergraph& h, unsigned threads) {
    ClusteringReport r;
    r.global = hc_global(h, threads);
    for (double x : hc_local_all(h, threads)) {
        const auto bin = std::min<std::size_t>(kHistogramBins - 1, static_cast<std::size_t>(x * kHistogramBins));
        ++r.local_histogram[bin];
        r.nonzero_local += x > 0.0;
    }
    return r;
}

nlohmann::json to_json(const ClusteringReport& report) {
    return {{"hc_global", report.global.value},
            {"n_intersecting_pairs", report.global.intersecting_pairs},
            {"hc_local_histogram", report.local_histogram},
            {"n_nonzero_local", report.nonzero_local}};
}

}  // namespace hypersub
