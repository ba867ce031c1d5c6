#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"

#include "hypersub/hypergraph.hpp"

namespace hypersub {

// Calls `visit(ei, ej)` with ei < ej once for every pair of distinct edges
// sharing at least one vertex. A pair is reported at its smallest common
// vertex, so nothing beyond one vertex's incidence list is held at a time.
void for_each_intersecting_pair(const Hypergraph& h, const std::function<void(EdgeId, EdgeId)>& visit);

// Sorted 2-section neighbour lists, reused across overlap evaluations.
class NeighbourIndex {
public:
    explicit NeighbourIndex(const Hypergraph& h);
    bool adjacent(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }

private:
    std::vector<std::vector<Vertex>> adj_;
};

// (|N(D_ij) ∩ D_ji| + |N(D_ji) ∩ D_ij|) / (|D_ij| + |D_ji|) with
// D_ij = ei \ ej and N the 2-section neighbourhood. Throws InputError when
// ei == ej.
double extra_overlap(const Hypergraph& h, EdgeId ei, EdgeId ej);
double extra_overlap(const Hypergraph& h, const NeighbourIndex& index, EdgeId ei, EdgeId ej);

// Mean overlap over pairs of edges containing v; 0 when deg(v) <= 1.
double hc_local(const Hypergraph& h, Vertex v);
std::vector<double> hc_local_all(const Hypergraph& h, unsigned threads = 1);

struct GlobalClustering {
    double value = 0.0;  // 0 when no edges intersect
    std::uint64_t intersecting_pairs = 0;
};

// Mean overlap over intersecting pairs. The result does not depend on
// `threads`.
GlobalClustering hc_global(const Hypergraph& h, unsigned threads = 1);

// Classical coefficients of a simple graph. Both are nullopt when no vertex
// has degree 2 or more.
struct GraphClustering {
    std::optional<double> average_local;  // C: mean of c(v) over vertices of degree >= 2
    std::optional<double> global;         // C': 3 * triangles / adjacent edge pairs
};

double graph_local_cc(const Graph& g, Vertex v);  // 0 when deg(v) < 2
GraphClustering graph_cc(const Graph& g);

inline constexpr std::size_t kHistogramBins = 100;

struct ClusteringReport {
    GlobalClustering global;
    std::array<std::uint64_t, kHistogramBins> local_histogram{};  // bin b: [b/100, (b+1)/100), last bin closed
    std::uint64_t nonzero_local = 0;
};

ClusteringReport clustering_report(const Hypergraph& h, unsigned threads = 1);
nlohmann::json to_json(const ClusteringReport& report);

}  // namespace hypersub
