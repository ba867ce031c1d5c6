#include "hypersub/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hypersub {

Hypergraph::Hypergraph(std::size_t num_vertices) : incidence_(num_vertices) {}

Hypergraph::Hypergraph(std::size_t num_vertices,
                       std::initializer_list<std::initializer_list<Vertex>> edges)
    : Hypergraph(num_vertices) {
    for (const auto& e : edges) {
        if (!add_edge(e)) throw std::invalid_argument("duplicate edge in edge list");
    }
}

Hypergraph Hypergraph::from_edges(std::size_t num_vertices,
                                  const std::vector<std::vector<Vertex>>& edges) {
    Hypergraph h(num_vertices);
    for (const auto& e : edges) {
        if (!h.add_edge(e)) throw std::invalid_argument("duplicate edge in edge list");
    }
    return h;
}

std::uint64_t Hypergraph::hash_edge(std::span<const Vertex> sorted_vertices) {
    // FNV-1a over the vertex ids.
    std::uint64_t h = 1469598103934665603ULL;
    for (Vertex v : sorted_vertices) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return h;
}

std::optional<EdgeId> Hypergraph::add_edge(std::span<const Vertex> vertices) {
    if (vertices.empty()) throw std::invalid_argument("empty edge");
    std::vector<Vertex> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("edge repeats a vertex");
    if (sorted.back() >= num_vertices())
        throw std::invalid_argument("vertex id " + std::to_string(sorted.back()) +
                                    " out of range for n = " + std::to_string(num_vertices()));
    if (find_edge(sorted)) return std::nullopt;

    const auto id = static_cast<EdgeId>(num_edges());
    vertices_.insert(vertices_.end(), sorted.begin(), sorted.end());
    offsets_.push_back(vertices_.size());
    for (Vertex v : sorted) incidence_[v].push_back(id);
    lookup_.emplace(hash_edge(sorted), id);
    return id;
}

std::optional<EdgeId> Hypergraph::find_edge(std::span<const Vertex> sorted_vertices) const {
    auto [lo, hi] = lookup_.equal_range(hash_edge(sorted_vertices));
    for (auto it = lo; it != hi; ++it) {
        auto e = edge(it->second);
        if (std::equal(e.begin(), e.end(), sorted_vertices.begin(), sorted_vertices.end()))
            return it->second;
    }
    return std::nullopt;
}

std::size_t Hypergraph::max_edge_size() const {
    std::size_t m = 0;
    for (EdgeId e = 0; e < num_edges(); ++e) m = std::max(m, edge_size(e));
    return m;
}

std::map<std::size_t, std::size_t> Hypergraph::edge_count_by_size() const {
    std::map<std::size_t, std::size_t> counts;
    for (EdgeId e = 0; e < num_edges(); ++e) ++counts[edge_size(e)];
    return counts;
}

bool Hypergraph::is_uniform(std::size_t r) const {
    for (EdgeId e = 0; e < num_edges(); ++e)
        if (edge_size(e) != r) return false;
    return true;
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e) {
        auto s = edge(e);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    for (EdgeId e = 0; e < a.num_edges(); ++e)
        if (!b.has_edge(a.edge(e))) return false;
    return true;
}

Graph::Graph(Hypergraph h) : h_(std::move(h)) {
    if (!h_.is_uniform(2)) throw std::invalid_argument("graph edges must have exactly 2 vertices");
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    const Vertex e[2] = {u, v};
    return h_.has_edge(e);
}

std::optional<EdgeId> Graph::add_edge(Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("graph edge repeats a vertex");
    const Vertex e[2] = {u, v};
    return h_.add_edge(e);
}

}  // namespace hypersub
