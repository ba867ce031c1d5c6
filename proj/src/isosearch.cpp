#include "hypersub/isosearch.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>

#include "hypersub/core.hpp"
#include "hypersub/error.hpp"

namespace hypersub {
namespace {

enum class Kind { strong, weak, bijective };

constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();

void guard_pattern(const Hypergraph& pattern, std::size_t limit) {
    if (pattern.num_vertices() > limit)
        throw GuardError("pattern has " + std::to_string(pattern.num_vertices()) +
                         " vertices; the limit is " + std::to_string(limit));
}

// Incident edge sizes of v, largest first.
std::vector<std::uint32_t> size_profile(const Hypergraph& h, Vertex v) {
    std::vector<std::uint32_t> sizes;
    sizes.reserve(h.degree(v));
    for (EdgeId e : h.incident(v)) sizes.push_back(static_cast<std::uint32_t>(h.edge_size(e)));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

// Per-size counts: host must have at least as many edges of each size.
bool dominates_exact(const std::vector<std::uint32_t>& host, const std::vector<std::uint32_t>& pat) {
    if (host.size() < pat.size()) return false;
    for (std::size_t i = 0; i < pat.size();) {
        std::size_t j = i;
        while (j < pat.size() && pat[j] == pat[i]) ++j;
        auto [lo, hi] = std::equal_range(host.begin(), host.end(), pat[i], std::greater<>());
        if (static_cast<std::size_t>(hi - lo) < j - i) return false;
        i = j;
    }
    return true;
}

// Sorted-descending dominance: an injection of pattern edges into host edges
// of at least the same size exists iff host[i] >= pat[i] for all i.
bool dominates_weak(const std::vector<std::uint32_t>& host, const std::vector<std::uint32_t>& pat) {
    if (host.size() < pat.size()) return false;
    for (std::size_t i = 0; i < pat.size(); ++i)
        if (host[i] < pat[i]) return false;
    return true;
}

class Matcher {
public:
    Matcher(const Hypergraph& pattern, const Hypergraph& host, Kind kind)
        : p_(pattern), h_(host), kind_(kind) {
        const std::size_t v = p_.num_vertices();
        pattern_profile_.resize(v);
        for (Vertex u = 0; u < v; ++u) pattern_profile_[u] = size_profile(p_, u);
        host_profile_.resize(h_.num_vertices());
        for (Vertex x = 0; x < h_.num_vertices(); ++x) host_profile_[x] = size_profile(h_, x);
        edge_mask_.resize(p_.num_edges());
        for (EdgeId f = 0; f < p_.num_edges(); ++f)
            for (Vertex u : p_.edge(f)) edge_mask_[f] |= 1u << u;
        plan_order();
    }

    struct Output {
        std::uint64_t count = 0;
        std::vector<std::pair<std::vector<Vertex>, Embedding>> listed;  // (copy key, embedding)
    };

    // Runs the search; roots are the candidates for the first pattern vertex.
    Output run(SearchMode mode, const SearchOptions& options) {
        Output out;
        const std::size_t v = p_.num_vertices();
        if (v == 0) {
            out.count = 1;
            if (mode == SearchMode::list) out.listed.push_back({{}, Embedding{{}, std::vector<EdgeId>(p_.num_edges())}});
            return out;
        }
        if (v > h_.num_vertices()) return out;

        std::vector<Vertex> roots;
        for (Vertex x = 0; x < h_.num_vertices(); ++x)
            if (profile_ok(order_[0], x)) roots.push_back(x);

        std::vector<Output> per_root(roots.size());
        std::atomic<std::size_t> next{0};
        std::atomic<bool> stop{false};
        auto worker = [&] {
            State st(*this);
            while (!stop.load(std::memory_order_relaxed)) {
                const std::size_t i = next++;
                if (i >= roots.size()) break;
                st.mode = mode;
                st.out = &per_root[i];
                st.stop = &stop;
                st.limit = options.list_limit;
                st.seen.clear();
                extend_root(st, roots[i]);
            }
        };
        const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                                 static_cast<unsigned>(roots.size())));
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        std::set<std::vector<Vertex>> seen;
        for (auto& r : per_root) {
            out.count += r.count;
            for (auto& item : r.listed) {
                if (out.listed.size() >= options.list_limit) break;
                if (seen.insert(item.first).second) out.listed.push_back(std::move(item));
            }
        }
        return out;
    }

private:
    struct State {
        explicit State(const Matcher& m)
            : phi(m.p_.num_vertices(), kUnset),
              owner(m.h_.num_vertices(), 0),
              stamp(m.h_.num_vertices(), 0),
              candidates(m.p_.num_vertices()) {}
        std::vector<Vertex> phi;
        std::vector<std::uint32_t> owner;  // pattern vertex + 1, or 0
        std::vector<std::uint32_t> stamp;
        std::uint32_t epoch = 0;
        std::vector<std::vector<Vertex>> candidates;
        std::vector<Vertex> scratch;
        SearchMode mode = SearchMode::count;
        Output* out = nullptr;
        std::atomic<bool>* stop = nullptr;
        std::size_t limit = 0;
        std::set<std::vector<Vertex>> seen;
    };

    void plan_order() {
        const std::size_t v = p_.num_vertices();
        std::vector<bool> placed(v, false);
        std::vector<std::size_t> links(v, 0);
        position_.assign(v, 0);
        auto better = [&](Vertex a, Vertex b) {
            if (links[a] != links[b]) return links[a] > links[b];
            if (p_.degree(a) != p_.degree(b)) return p_.degree(a) > p_.degree(b);
            if (pattern_profile_[a] != pattern_profile_[b]) return pattern_profile_[a] > pattern_profile_[b];
            return a < b;
        };
        for (std::size_t i = 0; i < v; ++i) {
            Vertex best = kUnset;
            for (Vertex u = 0; u < v; ++u)
                if (!placed[u] && (best == kUnset || better(u, best))) best = u;
            placed[best] = true;
            position_[best] = i;
            order_.push_back(best);
            for (EdgeId f : p_.incident(best))
                for (Vertex w : p_.edge(f))
                    if (!placed[w]) ++links[w];
        }
        anchor_.assign(v, -1);
        for (std::size_t i = 1; i < v; ++i) {
            const Vertex u = order_[i];
            for (EdgeId f : p_.incident(u)) {
                for (Vertex w : p_.edge(f))
                    if (position_[w] < i && (anchor_[i] < 0 || position_[w] < static_cast<std::size_t>(anchor_[i])))
                        anchor_[i] = static_cast<int>(position_[w]);
            }
        }
        closing_.assign(v, {});
        for (EdgeId f = 0; f < p_.num_edges(); ++f) {
            std::size_t last = 0;
            for (Vertex u : p_.edge(f)) last = std::max(last, position_[u]);
            closing_[last].push_back(f);
        }
    }

    bool profile_ok(Vertex u, Vertex x) const {
        switch (kind_) {
            case Kind::strong: return dominates_exact(host_profile_[x], pattern_profile_[u]);
            case Kind::weak: return dominates_weak(host_profile_[x], pattern_profile_[u]);
            case Kind::bijective: return host_profile_[x] == pattern_profile_[u];
        }
        return false;
    }

    // Host edge g with g ∩ (current image) = phi(f), or nullopt.
    std::optional<EdgeId> weak_witness(const State& st, EdgeId f) const {
        auto fv = p_.edge(f);
        Vertex pivot = st.phi[fv[0]];
        for (Vertex u : fv)
            if (h_.degree(st.phi[u]) < h_.degree(pivot)) pivot = st.phi[u];
        for (EdgeId g : h_.incident(pivot)) {
            if (h_.edge_size(g) < fv.size()) continue;
            std::size_t inside = 0;
            bool ok = true;
            for (Vertex z : h_.edge(g)) {
                if (st.owner[z] == 0) continue;
                if (edge_mask_[f] & (1u << (st.owner[z] - 1))) {
                    ++inside;
                } else {
                    ok = false;
                    break;
                }
            }
            if (ok && inside == fv.size()) return g;
        }
        return std::nullopt;
    }

    bool edges_ok(State& st, std::size_t depth) const {
        if (kind_ == Kind::weak) {
            for (std::size_t i = 0; i <= depth; ++i)
                for (EdgeId f : closing_[i])
                    if (!weak_witness(st, f)) return false;
            return true;
        }
        for (EdgeId f : closing_[depth]) {
            st.scratch.clear();
            for (Vertex u : p_.edge(f)) st.scratch.push_back(st.phi[u]);
            std::sort(st.scratch.begin(), st.scratch.end());
            if (!h_.has_edge(st.scratch)) return false;
        }
        return true;
    }

    void extend_root(State& st, Vertex x) {
        assign(st, 0, x);
        if (edges_ok(st, 0)) extend(st, 1);
        unassign(st, 0);
    }

    void assign(State& st, std::size_t depth, Vertex x) {
        st.phi[order_[depth]] = x;
        st.owner[x] = order_[depth] + 1;
    }
    void unassign(State& st, std::size_t depth) {
        st.owner[st.phi[order_[depth]]] = 0;
        st.phi[order_[depth]] = kUnset;
    }

    void extend(State& st, std::size_t depth) {
        if (st.stop->load(std::memory_order_relaxed)) return;
        if (depth == order_.size()) {
            record(st);
            return;
        }
        const Vertex u = order_[depth];
        auto& cand = st.candidates[depth];
        cand.clear();
        if (anchor_[depth] >= 0) {
            const Vertex a = st.phi[order_[static_cast<std::size_t>(anchor_[depth])]];
            if (++st.epoch == 0) {
                std::fill(st.stamp.begin(), st.stamp.end(), 0);
                st.epoch = 1;
            }
            for (EdgeId g : h_.incident(a))
                for (Vertex y : h_.edge(g))
                    if (st.stamp[y] != st.epoch) {
                        st.stamp[y] = st.epoch;
                        cand.push_back(y);
                    }
            std::sort(cand.begin(), cand.end());
        } else {
            for (Vertex y = 0; y < h_.num_vertices(); ++y) cand.push_back(y);
        }
        for (Vertex y : cand) {
            if (st.owner[y] != 0 || !profile_ok(u, y)) continue;
            assign(st, depth, y);
            if (edges_ok(st, depth)) extend(st, depth + 1);
            unassign(st, depth);
            if (st.stop->load(std::memory_order_relaxed)) return;
        }
    }

    void record(State& st) {
        switch (st.mode) {
            case SearchMode::exists:
                ++st.out->count;
                st.stop->store(true);
                return;
            case SearchMode::count:
                ++st.out->count;
                return;
            case SearchMode::list: break;
        }
        // Copy key: sorted image, then each image edge sorted, edges sorted.
        std::vector<Vertex> image(st.phi);
        std::sort(image.begin(), image.end());
        std::vector<std::vector<Vertex>> edges;
        for (EdgeId f = 0; f < p_.num_edges(); ++f) {
            std::vector<Vertex> e;
            for (Vertex u : p_.edge(f)) e.push_back(st.phi[u]);
            std::sort(e.begin(), e.end());
            edges.push_back(std::move(e));
        }
        std::sort(edges.begin(), edges.end());
        std::vector<Vertex> key = image;
        for (auto& e : edges) {
            key.push_back(kUnset);
            key.insert(key.end(), e.begin(), e.end());
        }
        if (st.out->listed.size() >= st.limit || !st.seen.insert(key).second) return;
        Embedding emb;
        emb.vertex_map = st.phi;
        if (kind_ == Kind::weak)
            for (EdgeId f = 0; f < p_.num_edges(); ++f) emb.witnesses.push_back(*weak_witness(st, f));
        st.out->listed.emplace_back(std::move(key), std::move(emb));
    }

    const Hypergraph& p_;
    const Hypergraph& h_;
    Kind kind_;
    std::vector<std::vector<std::uint32_t>> pattern_profile_;
    std::vector<std::vector<std::uint32_t>> host_profile_;
    std::vector<std::uint32_t> edge_mask_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> position_;
    std::vector<int> anchor_;
    std::vector<std::vector<EdgeId>> closing_;
};

CopySearchResult find_copies(const Hypergraph& pattern, const Hypergraph& host, Kind kind,
                             SearchMode mode, const SearchOptions& options) {
    guard_pattern(pattern, kMaxPatternVertices);
    Matcher m(pattern, host, kind);
    auto out = m.run(mode, options);
    CopySearchResult result;
    switch (mode) {
        case SearchMode::exists: result.found = out.count > 0; break;
        case SearchMode::count:
            result.count = out.count / automorphism_count(pattern);
            result.found = out.count > 0;
            break;
        case SearchMode::list:
            for (auto& item : out.listed) result.copies.push_back(std::move(item.second));
            result.found = !result.copies.empty();
            break;
    }
    return result;
}

std::uint64_t factorial(std::size_t k) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return f;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

CopySearchResult find_strong_copies(const Hypergraph& pattern, const Hypergraph& host,
                                    SearchMode mode, const SearchOptions& options) {
    return find_copies(pattern, host, Kind::strong, mode, options);
}

CopySearchResult find_weak_copies(const Hypergraph& pattern, const Hypergraph& host,
                                  SearchMode mode, const SearchOptions& options) {
    return find_copies(pattern, host, Kind::weak, mode, options);
}

std::uint64_t count_strong_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                                      const SearchOptions& options) {
    guard_pattern(pattern, kMaxPatternVertices);
    return Matcher(pattern, host, Kind::strong).run(SearchMode::count, options).count;
}

std::uint64_t count_weak_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                                    const SearchOptions& options) {
    guard_pattern(pattern, kMaxPatternVertices);
    return Matcher(pattern, host, Kind::weak).run(SearchMode::count, options).count;
}

std::uint64_t automorphism_count(const Hypergraph& h) {
    guard_pattern(h, kMaxPatternVertices);
    // Isolated vertices permute freely and independently of the rest.
    auto core = remove_isolated(h).graph;
    const std::size_t isolated = h.num_vertices() - core.num_vertices();
    const auto labelled = Matcher(core, core, Kind::bijective).run(SearchMode::count, {}).count;
    return labelled * factorial(isolated);
}

std::vector<std::uint64_t> isomorphism_invariant(const Hypergraph& h) {
    std::vector<std::uint64_t> key{h.num_vertices(), h.num_edges()};
    for (auto [size, count] : h.edge_count_by_size()) {
        key.push_back(size);
        key.push_back(count);
    }
    std::vector<std::uint64_t> vertex_hashes;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        std::uint64_t x = 0x51ed27;
        for (auto s : size_profile(h, v)) x = mix(x, s);
        std::vector<std::size_t> co_degrees;
        for (EdgeId e : h.incident(v))
            for (Vertex w : h.edge(e))
                if (w != v) co_degrees.push_back(h.degree(w));
        std::sort(co_degrees.begin(), co_degrees.end());
        x = mix(x, 0xabcdef);
        for (auto d : co_degrees) x = mix(x, d);
        vertex_hashes.push_back(x);
    }
    std::sort(vertex_hashes.begin(), vertex_hashes.end());
    key.insert(key.end(), vertex_hashes.begin(), vertex_hashes.end());
    return key;
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    if (isomorphism_invariant(a) != isomorphism_invariant(b)) return false;
    guard_pattern(a, kMaxPatternVertices);
    return Matcher(a, b, Kind::bijective).run(SearchMode::exists, {}).count > 0;
}

namespace {

class ClassCollector {
public:
    // True if `h` starts a new class.
    bool add(Hypergraph h) {
        auto& bucket = buckets_[isomorphism_invariant(h)];
        for (std::size_t idx : bucket)
            if (are_isomorphic(reps_[idx], h)) return false;
        bucket.push_back(reps_.size());
        reps_.push_back(std::move(h));
        return true;
    }
    std::vector<Hypergraph> take() { return std::move(reps_); }

private:
    std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> buckets_;
    std::vector<Hypergraph> reps_;
};

}  // namespace

std::vector<Hypergraph> isomorphism_classes(const std::vector<Hypergraph>& items) {
    ClassCollector c;
    for (const auto& h : items) c.add(h);
    return c.take();
}

std::vector<Hypergraph> enumerate_strong_subgraphs(const Hypergraph& h, const StrongSubgraphOptions& options) {
    guard_pattern(h, kMaxEnumerationVertices);
    const std::size_t n = h.num_vertices();
    std::vector<std::uint32_t> edge_masks;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        std::uint32_t m = 0;
        for (Vertex v : h.edge(e)) m |= 1u << v;
        edge_masks.push_back(m);
    }

    std::vector<std::vector<EdgeId>> inside(std::size_t{1} << n);
    std::uint64_t total = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        for (EdgeId e = 0; e < edge_masks.size(); ++e)
            if ((edge_masks[e] & ~s) == 0) inside[s].push_back(e);
        if (inside[s].size() >= 40) throw GuardError("too many edges inside a vertex subset to enumerate");
        total += std::uint64_t{1} << inside[s].size();
        if (total > options.max_candidates)
            throw GuardError("strong subgraph enumeration exceeds " + std::to_string(options.max_candidates) +
                             " candidates");
    }

    ClassCollector classes;
    std::vector<Vertex> local(n);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        std::size_t k = 0;
        for (Vertex v = 0; v < n; ++v)
            if (s & (1u << v)) local[v] = static_cast<Vertex>(k++);
        const auto& es = inside[s];
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << es.size()); ++pick) {
            std::uint32_t covered = 0;
            for (std::size_t i = 0; i < es.size(); ++i)
                if (pick >> i & 1) covered |= edge_masks[es[i]];
            if (options.edge_spanning_only && (pick == 0 || covered != s)) continue;
            Hypergraph sub(k);
            std::vector<Vertex> buf;
            for (std::size_t i = 0; i < es.size(); ++i) {
                if (!(pick >> i & 1)) continue;
                buf.clear();
                for (Vertex v : h.edge(es[i])) buf.push_back(local[v]);
                sub.add_edge(buf);
            }
            classes.add(std::move(sub));
        }
    }
    return classes.take();
}

}  // namespace hypersub
