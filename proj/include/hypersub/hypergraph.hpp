#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace hypersub {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/**
 * Sparse hypergraph on the dense vertex set {0, ..., n-1}.
 *
 * Edges are distinct, nonempty sets of vertices stored as sorted arrays in a
 * flat buffer. Every vertex keeps the list of edge ids containing it, in
 * insertion order. Edge identity is set equality: adding an edge that is
 * already present is a no-op reported to the caller.
 */
class Hypergraph {
public:
    Hypergraph() = default;
    explicit Hypergraph(std::size_t num_vertices);

    // Builds from a list of edges; throws std::invalid_argument on an empty
    // edge, repeated vertex or out-of-range id, and on duplicate edges.
    Hypergraph(std::size_t num_vertices,
               std::initializer_list<std::initializer_list<Vertex>> edges);
    static Hypergraph from_edges(std::size_t num_vertices,
                                 const std::vector<std::vector<Vertex>>& edges);

    // Returns the new edge id, or std::nullopt if an equal edge exists.
    // The vertex list may be unsorted; it must be nonempty, in range and
    // free of repeats.
    std::optional<EdgeId> add_edge(std::span<const Vertex> vertices);
    std::optional<EdgeId> add_edge(std::initializer_list<Vertex> vertices) {
        return add_edge(std::span<const Vertex>(vertices.begin(), vertices.size()));
    }

    std::size_t num_vertices() const { return incidence_.size(); }
    std::size_t num_edges() const { return offsets_.size() - 1; }

    std::span<const Vertex> edge(EdgeId e) const {
        return {vertices_.data() + offsets_[e], offsets_[e + 1] - offsets_[e]};
    }
    std::size_t edge_size(EdgeId e) const { return offsets_[e + 1] - offsets_[e]; }
    std::span<const EdgeId> incident(Vertex v) const { return incidence_[v]; }
    std::size_t degree(Vertex v) const { return incidence_[v].size(); }

    // Lookup by set; `sorted_vertices` must be sorted ascending.
    std::optional<EdgeId> find_edge(std::span<const Vertex> sorted_vertices) const;
    bool has_edge(std::span<const Vertex> sorted_vertices) const {
        return find_edge(sorted_vertices).has_value();
    }

    std::size_t max_edge_size() const;
    // e_r(H) for every r present.
    std::map<std::size_t, std::size_t> edge_count_by_size() const;
    bool is_uniform(std::size_t r) const;

    std::vector<std::vector<Vertex>> edge_list() const;

    // Equal as labelled hypergraphs: same n and same edge set.
    friend bool operator==(const Hypergraph& a, const Hypergraph& b);

private:
    static std::uint64_t hash_edge(std::span<const Vertex> sorted_vertices);

    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> vertices_;
    std::vector<std::vector<EdgeId>> incidence_;
    std::unordered_multimap<std::uint64_t, EdgeId> lookup_;
};

// A hypergraph whose edges all have exactly two vertices.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t num_vertices) : h_(num_vertices) {}
    // Throws std::invalid_argument unless `h` is 2-uniform.
    explicit Graph(Hypergraph h);

    const Hypergraph& hypergraph() const { return h_; }
    std::size_t num_vertices() const { return h_.num_vertices(); }
    std::size_t num_edges() const { return h_.num_edges(); }
    bool has_edge(Vertex u, Vertex v) const;
    std::optional<EdgeId> add_edge(Vertex u, Vertex v);

    friend bool operator==(const Graph& a, const Graph& b) { return a.h_ == b.h_; }

private:
    Hypergraph h_;
};

// A hypergraph cut out of a parent, with the parent id of every local vertex.
struct Subhypergraph {
    Hypergraph graph;
    std::vector<Vertex> to_parent;
};

}  // namespace hypersub
