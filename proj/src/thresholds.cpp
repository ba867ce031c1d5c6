#include "hypersub/thresholds.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <set>
#include <thread>

#include "hypersub/error.hpp"
#include "hypersub/isosearch.hpp"

namespace hypersub {

AsymptoticVerdict asymptotic_verdict(const Exponent& x) {
    switch (x.sign()) {
        case -1: return AsymptoticVerdict::tends_to_zero;
        case 1: return AsymptoticVerdict::tends_to_infinity;
        default: return AsymptoticVerdict::order_constant;
    }
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::aas_absent: return "aas_absent";
        case Outcome::aas_present: return "aas_present";
        case Outcome::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

nlohmann::json to_json(const ContainmentVerdict& v) {
    return {{"verdict", to_string(v.outcome)},
            {"exponent", v.exponent.to_string()},
            {"witness_subgraph", {{"n", v.witness.num_vertices()}, {"edges", v.witness.edge_list()}}},
            {"rule", v.rule}};
}

namespace {

template <typename Weight>
Exponent surrogate_exponent(const Hypergraph& h, Weight weight) {
    Exponent x(static_cast<std::int64_t>(h.num_vertices()));
    for (auto [r, count] : h.edge_count_by_size()) x = x + static_cast<std::int64_t>(count) * weight(r);
    return x;
}

// min over nonempty S of |S| + (sum of the negative edge weights inside S).
// Nonnegative weights never lower a strong subgraph's exponent, so this is
// the minimum over all strong subgraphs.
template <typename Weight>
AsymptoticClass min_class(const Hypergraph& h, Weight weight) {
    const std::size_t n = h.num_vertices();
    if (n > kMaxThresholdVertices)
        throw GuardError("threshold classification is limited to " + std::to_string(kMaxThresholdVertices) +
                         " vertices");
    AsymptoticClass out;
    if (n == 0) {
        out.exponent = Exponent(0);
        return out;
    }
    std::vector<std::uint32_t> masks;
    std::vector<Exponent> weights;
    std::map<std::size_t, Exponent> by_size;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        const auto r = h.edge_size(e);
        auto it = by_size.find(r);
        if (it == by_size.end()) it = by_size.emplace(r, weight(r)).first;
        if (it->second.sign() >= 0) continue;
        std::uint32_t m = 0;
        for (Vertex v : h.edge(e)) m |= 1u << v;
        masks.push_back(m);
        weights.push_back(it->second);
    }

    std::uint32_t best_set = 0;
    Exponent best;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        Exponent x(static_cast<std::int64_t>(std::popcount(s)));
        for (std::size_t i = 0; i < masks.size(); ++i)
            if ((masks[i] & ~s) == 0) x = x + weights[i];
        if (best_set == 0 || x < best) {
            best = x;
            best_set = s;
        }
    }

    std::vector<Vertex> local(n, 0);
    std::size_t k = 0;
    for (Vertex v = 0; v < n; ++v)
        if (best_set >> v & 1) local[v] = static_cast<Vertex>(k++);
    out.witness = Hypergraph(k);
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if ((masks[i] & ~best_set) != 0) continue;
        std::vector<Vertex> e;
        for (Vertex v = 0; v < n; ++v)
            if (masks[i] >> v & 1) e.push_back(local[v]);
        out.witness.add_edge(e);
    }
    out.exponent = best;
    out.verdict = asymptotic_verdict(best);
    return out;
}

ContainmentVerdict verdict_from(const AsymptoticClass& c, const std::string& theorem) {
    ContainmentVerdict v;
    v.witness = c.witness;
    v.exponent = c.exponent;
    switch (c.verdict) {
        case AsymptoticVerdict::tends_to_zero:
            v.outcome = Outcome::aas_absent;
            v.rule = theorem + ": some strong subgraph has expected count tending to 0";
            break;
        case AsymptoticVerdict::tends_to_infinity:
            v.outcome = Outcome::aas_present;
            v.rule = theorem + ": every strong subgraph has expected count tending to infinity";
            break;
        case AsymptoticVerdict::order_constant:
            v.outcome = Outcome::inconclusive;
            v.rule = theorem + ": smallest exponent is 0";
            break;
    }
    return v;
}

// p_r <= 1 - eps for a constant eps.
bool bounded_away_from_one(const PowerLawSequence& p, std::size_t r) {
    auto t = p.term(r);
    return !t || t->alpha.numerator() > 0 || t->coeff < 1.0;
}

}  // namespace

Exponent mu_s_exponent(const Hypergraph& h, const PowerLawSequence& p) {
    return surrogate_exponent(h, [&](std::size_t r) { return p.level_exponent(r); });
}

Exponent mu_w_exponent(const Hypergraph& h, const PowerLawSequence& p) {
    return surrogate_exponent(h, [&](std::size_t r) { return p.prime_exponent(r); });
}

AsymptoticClass min_strong_class(const Hypergraph& h, const PowerLawSequence& p) {
    return min_class(h, [&](std::size_t r) { return p.level_exponent(r); });
}

AsymptoticClass min_weak_class(const Hypergraph& h, const PowerLawSequence& p) {
    return min_class(h, [&](std::size_t r) { return p.prime_exponent(r); });
}

ContainmentVerdict classify_strong(const Hypergraph& h, const PowerLawSequence& p, bool induced) {
    auto v = verdict_from(min_strong_class(h, p), "strong");
    if (!induced || v.outcome == Outcome::aas_absent) return v;
    for (std::size_t r = 1; r <= p.max_size(); ++r) {
        if (!bounded_away_from_one(p, r)) {
            v.outcome = Outcome::inconclusive;
            v.rule = "induced strong: p_" + std::to_string(r) + " is not bounded away from 1";
            return v;
        }
    }
    v.rule = "induced " + v.rule;
    return v;
}

ContainmentVerdict classify_weak(const Hypergraph& h, const PowerLawSequence& p) {
    return verdict_from(min_weak_class(h, p), "weak");
}

ContainmentVerdict classify_induced_weak(const Hypergraph& h, const PowerLawSequence& p) {
    const std::size_t k = h.num_vertices();
    if (k > kMaxThresholdVertices)
        throw GuardError("threshold classification is limited to " + std::to_string(kMaxThresholdVertices) +
                         " vertices");
    // Smallest-mask non-edge of every size r that has one.
    std::map<std::size_t, std::vector<Vertex>> non_edge;
    for (std::uint32_t s = 1; s < (1u << k); ++s) {
        const auto r = static_cast<std::size_t>(std::popcount(s));
        if (non_edge.count(r)) continue;
        std::vector<Vertex> e;
        for (Vertex v = 0; v < k; ++v)
            if (s >> v & 1) e.push_back(v);
        if (!h.has_edge(e)) non_edge[r] = e;
    }

    for (const auto& [r, e] : non_edge) {
        const auto x = p.prime_exponent(r);
        if (x.sign() > 0) {
            ContainmentVerdict v;
            v.outcome = Outcome::aas_absent;
            v.exponent = x;
            v.witness = Hypergraph(k);
            v.witness.add_edge(e);
            v.rule = "induced weak: a non-edge of size " + std::to_string(r) +
                     " extends to an edge a.a.s. (p''_" + std::to_string(r) + " grows polynomially)";
            return v;
        }
    }

    auto weak = classify_weak(h, p);
    if (weak.outcome == Outcome::aas_absent || non_edge.empty()) {
        weak.rule = "induced " + weak.rule;
        return weak;
    }
    const std::size_t r = non_edge.begin()->first;
    if (!bounded_away_from_one(p, r)) {
        weak.outcome = Outcome::inconclusive;
        weak.rule = "induced weak: p_" + std::to_string(r) + " at the smallest non-edge size is not bounded away from 1";
        return weak;
    }
    weak.rule = "induced weak (smallest non-edge size " + std::to_string(r) + ", p'_r = O(1)): " + weak.rule;
    return weak;
}

Hypergraph construct_J(const Hypergraph& h, const std::map<std::size_t, std::size_t>& padding) {
    std::size_t total = h.num_vertices();
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto it = padding.find(h.edge_size(e));
        if (it != padding.end()) total += it->second;
    }
    Hypergraph j(total);
    Vertex fresh = static_cast<Vertex>(h.num_vertices());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        std::vector<Vertex> edge(h.edge(e).begin(), h.edge(e).end());
        auto it = padding.find(edge.size());
        const std::size_t extra = it == padding.end() ? 0 : it->second;
        for (std::size_t i = 0; i < extra; ++i) edge.push_back(fresh++);
        j.add_edge(edge);
    }
    return j;
}

Hypergraph construct_J(const Hypergraph& h, const PowerLawSequence& p) {
    std::map<std::size_t, std::size_t> padding;
    for (auto [r, count] : h.edge_count_by_size()) {
        auto i = p.dominant_padding(r);
        if (!i) throw InputError("p'_" + std::to_string(r) + " is identically zero");
        padding[r] = *i;
    }
    return construct_J(h, padding);
}

namespace {

class SubedgeSearch {
public:
    SubedgeSearch(const Hypergraph& h1, const Hypergraph& h2) : h1_(h1), h2_(h2) {
        for (EdgeId g = 0; g < h2.num_edges(); ++g) {
            std::uint32_t m = 0;
            for (Vertex v : h2.edge(g)) m |= 1u << v;
            host_masks_.push_back(m);
        }
        for (Vertex u = 0; u < h1.num_vertices(); ++u)
            if (h1.degree(u) > 0) order_.push_back(u);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](Vertex a, Vertex b) { return h1.degree(a) > h1.degree(b); });
        std::vector<std::size_t> pos(h1.num_vertices(), 0);
        for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
        closing_.resize(order_.size());
        for (EdgeId f = 0; f < h1.num_edges(); ++f) {
            std::size_t last = 0;
            for (Vertex u : h1.edge(f)) last = std::max(last, pos[u]);
            closing_[last].push_back(f);
        }
        phi_.assign(h1.num_vertices(), 0);
    }

    bool run() { return order_.empty() ? true : extend(0, 0); }

private:
    std::uint32_t image(EdgeId f) const {
        std::uint32_t m = 0;
        for (Vertex u : h1_.edge(f)) m |= 1u << phi_[u];
        return m;
    }

    bool extend(std::size_t depth, std::uint32_t used) {
        if (depth == order_.size()) return matching();
        for (Vertex x = 0; x < h2_.num_vertices(); ++x) {
            if (used >> x & 1) continue;
            phi_[order_[depth]] = x;
            bool ok = true;
            for (EdgeId f : closing_[depth]) {
                const auto m = image(f);
                ok = std::any_of(host_masks_.begin(), host_masks_.end(),
                                 [m](std::uint32_t g) { return (m & ~g) == 0; });
                if (!ok) break;
            }
            if (ok && extend(depth + 1, used | (1u << x))) return true;
        }
        return false;
    }

    // Kuhn's augmenting paths: every h1 edge to a distinct containing h2 edge.
    bool matching() {
        const std::size_t m1 = h1_.num_edges();
        std::vector<std::uint32_t> images(m1);
        for (EdgeId f = 0; f < m1; ++f) images[f] = image(f);
        std::vector<int> owner(host_masks_.size(), -1);
        for (EdgeId f = 0; f < m1; ++f) {
            std::vector<bool> visited(host_masks_.size(), false);
            if (!augment(static_cast<int>(f), images, owner, visited)) return false;
        }
        return true;
    }

    bool augment(int f, const std::vector<std::uint32_t>& images, std::vector<int>& owner,
                 std::vector<bool>& visited) {
        for (std::size_t g = 0; g < host_masks_.size(); ++g) {
            if (visited[g] || (images[f] & ~host_masks_[g]) != 0) continue;
            visited[g] = true;
            if (owner[g] < 0 || augment(owner[g], images, owner, visited)) {
                owner[g] = f;
                return true;
            }
        }
        return false;
    }

    const Hypergraph& h1_;
    const Hypergraph& h2_;
    std::vector<std::uint32_t> host_masks_;
    std::vector<Vertex> order_;
    std::vector<std::vector<EdgeId>> closing_;
    std::vector<Vertex> phi_;
};

}  // namespace

bool is_subedge_system(const Hypergraph& h1, const Hypergraph& h2, bool spanning) {
    if (h2.num_vertices() > kMaxEnumerationVertices)
        throw GuardError("subedge system test is limited to " + std::to_string(kMaxEnumerationVertices) +
                         " vertices");
    if (h1.num_vertices() > h2.num_vertices() || h1.num_edges() > h2.num_edges()) return false;
    if (spanning && h1.num_vertices() != h2.num_vertices()) return false;
    return SubedgeSearch(h1, h2).run();
}

namespace {

class CoverSearch {
public:
    explicit CoverSearch(const Graph& g) : n_(g.num_vertices()) {
        const auto& h = g.hypergraph();
        for (EdgeId e = 0; e < h.num_edges(); ++e) pairs_.push_back((1u << h.edge(e)[0]) | (1u << h.edge(e)[1]));
    }

    std::vector<std::vector<std::uint32_t>> run() {
        if (!pairs_.empty()) extend();
        return {found_.begin(), found_.end()};
    }

private:
    // Bitmask over pairs_ of the graph edges inside hyperedge c.
    std::uint64_t pairs_in(std::uint32_t c) const {
        std::uint64_t m = 0;
        for (std::size_t j = 0; j < pairs_.size(); ++j)
            if ((pairs_[j] & ~c) == 0) m |= std::uint64_t{1} << j;
        return m;
    }

    // Every chosen edge must be needed: removing it, or dropping any one of
    // its vertices, must uncover some graph edge. Adding edges never restores
    // this, so a violation prunes the branch.
    bool locally_minimal() const {
        for (std::size_t i = 0; i < chosen_.size(); ++i) {
            std::uint64_t others = 0;
            for (std::size_t k = 0; k < chosen_.size(); ++k)
                if (k != i) others |= pairs_in(chosen_[k]);
            const auto own = pairs_in(chosen_[i]) & ~others;
            if (own == 0) return false;
            for (Vertex x = 0; x < n_; ++x) {
                if (!(chosen_[i] >> x & 1)) continue;
                bool needed = false;
                for (std::size_t j = 0; j < pairs_.size() && !needed; ++j)
                    needed = (own >> j & 1) && (pairs_[j] >> x & 1);
                if (!needed) return false;
            }
        }
        return true;
    }

    void extend() {
        if (++nodes_ > kNodeBudget) throw GuardError("minimal cover search exceeded its node budget");
        std::uint64_t covered = 0;
        for (auto c : chosen_) covered |= pairs_in(c);
        std::size_t first = 0;
        while (first < pairs_.size() && (covered >> first & 1)) ++first;
        if (first == pairs_.size()) {
            auto sorted = chosen_;
            std::sort(sorted.begin(), sorted.end());
            found_.insert(sorted);
            return;
        }
        const std::uint32_t all = (1u << n_) - 1;
        const std::uint32_t rest = all & ~pairs_[first];
        // Every superset of the uncovered pair.
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint32_t c = pairs_[first] | sub;
            if (std::find(chosen_.begin(), chosen_.end(), c) == chosen_.end()) {
                chosen_.push_back(c);
                if (locally_minimal()) extend();
                chosen_.pop_back();
            }
            if (sub == 0) break;
        }
    }

    static constexpr std::uint64_t kNodeBudget = 20'000'000;
    std::size_t n_;
    std::vector<std::uint32_t> pairs_;
    std::vector<std::uint32_t> chosen_;
    std::set<std::vector<std::uint32_t>> found_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<Hypergraph> minimal_2section_covers(const Graph& g) {
    const std::size_t n = g.num_vertices();
    if (n > kMaxCoverVertices)
        throw GuardError("minimal cover search is limited to " + std::to_string(kMaxCoverVertices) + " vertices");
    for (Vertex v = 0; v < n; ++v)
        if (g.hypergraph().degree(v) == 0) throw InputError("graph has an isolated vertex " + std::to_string(v));

    std::vector<Hypergraph> candidates;
    for (const auto& cover : CoverSearch(g).run()) {
        Hypergraph h(n);
        for (auto c : cover) {
            std::vector<Vertex> e;
            for (Vertex v = 0; v < n; ++v)
                if (c >> v & 1) e.push_back(v);
            h.add_edge(e);
        }
        candidates.push_back(std::move(h));
    }
    auto classes = isomorphism_classes(candidates);

    std::vector<Hypergraph> minimal;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < classes.size() && !dominated; ++j)
            dominated = j != i && is_subedge_system(classes[j], classes[i], true);
        if (!dominated) minimal.push_back(classes[i]);
    }
    return minimal;
}

ContainmentVerdict classify_2section(const Graph& g, const PowerLawSequence& p) {
    const auto covers = minimal_2section_covers(g);
    std::optional<ContainmentVerdict> present, open, absent;
    for (const auto& cover : covers) {
        auto v = classify_weak(cover, p);
        v.witness = cover;
        auto& slot = v.outcome == Outcome::aas_present ? present
                     : v.outcome == Outcome::aas_absent ? absent
                                                        : open;
        if (!slot) slot = std::move(v);
    }
    const std::string count = std::to_string(covers.size()) + " minimal covers";
    if (present) {
        present->rule = "2-section: a minimal cover is weakly present (" + count + ")";
        return *present;
    }
    if (open) {
        open->rule = "2-section: no minimal cover is weakly present, some are inconclusive (" + count + ")";
        return *open;
    }
    ContainmentVerdict v;
    if (absent) v = *absent;
    v.outcome = Outcome::aas_absent;
    v.rule = "2-section: every minimal cover is weakly absent (" + count + ")";
    return v;
}

double presence_frequency(const Hypergraph& pattern, const NumericSequence& p, std::uint64_t n,
                          std::size_t trials, std::uint64_t seed, ContainmentKind kind, unsigned threads) {
    if (trials == 0) return 0.0;
    std::vector<char> hit(trials, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next++) < trials;) {
            const auto h = sample(n, p, derive_seed(seed, t));
            hit[t] = kind == ContainmentKind::strong ? find_strong_copies(pattern, h, SearchMode::exists).found
                                                     : find_weak_copies(pattern, h, SearchMode::exists).found;
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(trials);
}

}  // namespace hypersub
