#include "hypersub/motifcensus.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "hypersub/error.hpp"

namespace hypersub {
namespace {

void check_clique_order(std::size_t k) {
    if (k < 3 || k > 5) throw InputError("clique order k = " + std::to_string(k) + " is outside 3..5");
}

// 2-section adjacency oriented along a degeneracy order: fwd[v] holds the
// neighbours that come after v, sorted by id.
struct OrientedAdjacency {
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> fwd;
};

OrientedAdjacency orient(const Hypergraph& h) {
    const std::size_t n = h.num_vertices();
    std::vector<std::vector<Vertex>> adj(n);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        auto vs = h.edge(e);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                adj[vs[i]].push_back(vs[j]);
                adj[vs[j]].push_back(vs[i]);
            }
    }
    std::size_t max_deg = 0;
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        max_deg = std::max(max_deg, a.size());
    }

    // Bucket-queue degeneracy ordering (smallest remaining degree first).
    std::vector<std::size_t> deg(n);
    std::vector<std::vector<Vertex>> buckets(max_deg + 1);
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = adj[v].size();
        buckets[deg[v]].push_back(v);
    }
    for (auto& b : buckets) std::reverse(b.begin(), b.end());
    std::vector<bool> removed(n, false);
    std::vector<std::size_t> position(n);
    OrientedAdjacency out;
    out.order.reserve(n);
    std::size_t low = 0;
    while (out.order.size() < n) {
        while (buckets[low].empty()) ++low;
        const Vertex v = buckets[low].back();
        buckets[low].pop_back();
        if (removed[v] || deg[v] != low) continue;
        removed[v] = true;
        position[v] = out.order.size();
        out.order.push_back(v);
        for (Vertex u : adj[v]) {
            if (removed[u]) continue;
            buckets[--deg[u]].push_back(u);
            low = std::min(low, deg[u]);
        }
    }
    out.fwd.resize(n);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : adj[v])
            if (position[u] > position[v]) out.fwd[v].push_back(u);
    return out;
}

class CliqueWalker {
public:
    CliqueWalker(const OrientedAdjacency& adj, std::size_t k, std::atomic<std::uint64_t>& emitted, std::uint64_t cap)
        : adj_(adj), k_(k), emitted_(emitted), cap_(cap), levels_(k) {}

    template <class Visit>
    void from_pivot(Vertex v, Visit&& visit) {
        stack_.assign(1, v);
        levels_[1] = adj_.fwd[v];
        extend(1, visit);
    }

private:
    template <class Visit>
    void extend(std::size_t depth, Visit& visit) {
        const auto& cand = levels_[depth];
        if (depth + 1 == k_) {
            for (Vertex u : cand) {
                stack_.push_back(u);
                emit(visit);
                stack_.pop_back();
            }
            return;
        }
        for (Vertex u : cand) {
            auto& next = levels_[depth + 1];
            next.clear();
            const auto& fu = adj_.fwd[u];
            std::set_intersection(cand.begin(), cand.end(), fu.begin(), fu.end(), std::back_inserter(next));
            if (next.size() + depth + 1 < k_) continue;
            stack_.push_back(u);
            extend(depth + 1, visit);
            stack_.pop_back();
        }
    }

    template <class Visit>
    void emit(Visit& visit) {
        if (emitted_.fetch_add(1, std::memory_order_relaxed) >= cap_)
            throw GuardError("clique listing exceeded the cap of " + std::to_string(cap_) + " cliques");
        sorted_.assign(stack_.begin(), stack_.end());
        std::sort(sorted_.begin(), sorted_.end());
        visit(std::span<const Vertex>(sorted_));
    }

    const OrientedAdjacency& adj_;
    std::size_t k_;
    std::atomic<std::uint64_t>& emitted_;
    std::uint64_t cap_;
    std::vector<std::vector<Vertex>> levels_;
    std::vector<Vertex> stack_;
    std::vector<Vertex> sorted_;
};

// Runs `make_visitor(t)` on worker t over the pivots t, t + T, ... of the
// degeneracy order. Exceptions from any worker are rethrown.
template <class MakeVisitor>
void parallel_cliques(const Hypergraph& h, std::size_t k, const CliqueOptions& options, MakeVisitor&& make_visitor) {
    check_clique_order(k);
    const auto adj = orient(h);
    std::atomic<std::uint64_t> emitted{0};
    const unsigned threads = std::max(1u, options.threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            CliqueWalker walker(adj, k, emitted, options.cap);
            auto visit = make_visitor(t);
            for (std::size_t i = t; i < adj.order.size(); i += threads) walker.from_pivot(adj.order[i], visit);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Bitmask over positions in s of e ∩ s.
std::uint32_t trace_mask(std::span<const Vertex> edge, std::span<const Vertex> s) {
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (std::binary_search(edge.begin(), edge.end(), s[j])) mask |= 1u << j;
    return mask;
}

Signature signature_of_traces(const Hypergraph& h, std::span<const Vertex> s) {
    std::uint32_t seen = 0;  // bit m set once trace m has been recorded (k <= 5)
    std::vector<std::uint32_t> counts(s.size() - 1, 0);
    for (Vertex v : s)
        for (EdgeId e : h.incident(v)) {
            const auto m = trace_mask(h.edge(e), s);
            if (std::popcount(m) < 2 || (seen >> m & 1)) continue;
            seen |= 1u << m;
            ++counts[std::popcount(m) - 2];
        }
    return Signature::from_counts(s.size(), std::move(counts));
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10e", x);
    return buf;
}

}  // namespace

void for_each_k_clique(const Hypergraph& h, std::size_t k,
                       const std::function<void(std::span<const Vertex>)>& visit, std::uint64_t cap) {
    parallel_cliques(h, k, CliqueOptions{cap, 1}, [&](unsigned) { return [&](std::span<const Vertex> c) { visit(c); }; });
}

std::vector<std::vector<Vertex>> list_k_cliques(const Hypergraph& h, std::size_t k, const CliqueOptions& options) {
    std::vector<std::vector<std::vector<Vertex>>> parts(std::max(1u, options.threads));
    parallel_cliques(h, k, options, [&](unsigned t) {
        return [&parts, t](std::span<const Vertex> c) { parts[t].emplace_back(c.begin(), c.end()); };
    });
    std::vector<std::vector<Vertex>> all;
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
    std::sort(all.begin(), all.end());
    return all;
}

Signature observed_signature(const Hypergraph& h, std::span<const Vertex> s) {
    if (s.size() < 2 || s.size() > kMaxSignatureOrder)
        throw InputError("observed_signature needs 2.." + std::to_string(kMaxSignatureOrder) + " vertices");
    std::vector<Vertex> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    return signature_of_traces(h, sorted);
}

SignatureTally& SignatureTally::operator+=(const SignatureTally& other) {
    if (k == 0) k = other.k;
    if (other.k != 0 && other.k != k) throw InputError("cannot pool tallies of different clique orders");
    total += other.total;
    for (const auto& [s, c] : other.counts) counts[s] += c;
    return *this;
}

SignatureTally tally_signatures(const Hypergraph& h, std::size_t k, const CliqueOptions& options) {
    check_clique_order(k);
    const auto& feasible = signature_weights(k);
    std::vector<SignatureTally> parts(std::max(1u, options.threads));
    parallel_cliques(h, k, options, [&](unsigned t) {
        return [&h, &feasible, &part = parts[t]](std::span<const Vertex> c) {
            auto sig = signature_of_traces(h, c);
            if (!feasible.contains(sig))
                throw std::logic_error("clique with infeasible signature (" + sig.to_string() + ")");
            ++part.counts[sig];
            ++part.total;
        };
    });
    SignatureTally out;
    out.k = k;
    for (const auto& p : parts) {
        out.total += p.total;
        for (const auto& [s, c] : p.counts) out.counts[s] += c;
    }
    return out;
}

const CensusEntry* CensusReport::find(const Signature& s) const {
    for (const auto& e : entries)
        if (e.signature == s) return &e;
    return nullptr;
}

CensusReport census_from_tally(const SignatureTally& tally, const OriginationTable& theory) {
    if (tally.k != theory.k) throw InputError("census and theory tables have different k");
    CensusReport report;
    report.k = tally.k;
    report.total_cliques = tally.total;
    report.mode = theory.mode;
    for (const auto& t : theory.entries) {
        auto it = tally.counts.find(t.signature);
        if (it == tally.counts.end() || it->second == 0) {
            report.unobserved.push_back({t.signature, t.rank, t.probability});
            continue;
        }
        CensusEntry e;
        e.signature = t.signature;
        e.count = it->second;
        e.observed_probability = static_cast<double>(e.count) / static_cast<double>(tally.total);
        e.theory_probability = t.probability;
        e.rank_theory = t.rank;
        report.entries.push_back(e);
    }
    for (const auto& [s, c] : tally.counts)
        if (c > 0 && !theory.find(s)) throw std::logic_error("observed signature (" + s.to_string() + ") has no theory entry");

    // Entries arrive in R_theory order.
    for (std::size_t i = 0; i < report.entries.size(); ++i) report.entries[i].rank_theory_observed = i + 1;
    std::stable_sort(report.entries.begin(), report.entries.end(), [](const CensusEntry& a, const CensusEntry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.signature < b.signature;
    });
    auto& es = report.entries;
    for (std::size_t i = 0; i < es.size(); ++i) {
        es[i].rank_observed = i + 1;
        es[i].tied_observed =
            (i > 0 && es[i - 1].count == es[i].count) || (i + 1 < es.size() && es[i + 1].count == es[i].count);
        report.has_observed_ties = report.has_observed_ties || es[i].tied_observed;
    }
    const auto m = static_cast<double>(es.size());
    if (es.size() >= 2) {
        double d2 = 0;
        for (const auto& e : es) {
            const double d = static_cast<double>(e.rank_theory_observed) - static_cast<double>(e.rank_observed);
            d2 += d * d;
        }
        report.spearman = 1.0 - 6.0 * d2 / (m * (m * m - 1.0));
    }
    return report;
}

CensusReport census(const Hypergraph& h, std::size_t k, const NumericSequence& p, std::uint64_t n,
                    const CliqueOptions& options, WeightMode mode) {
    auto theory = origination_distribution(k, p, n, mode);
    return census_from_tally(tally_signatures(h, k, options), theory);
}

ChiSquareResult chi_square_top(const SignatureTally& tally, const OriginationTable& theory, std::size_t top,
                               double min_expected) {
    if (tally.total == 0) throw InputError("chi-square needs at least one observed clique");
    const auto total = static_cast<double>(tally.total);
    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double rest_obs = total, rest_exp = total;
    for (std::size_t i = 0; i < std::min(top, theory.entries.size()); ++i) {
        const auto& t = theory.entries[i];
        const double expected = total * t.probability;
        if (expected < min_expected) continue;
        auto it = tally.counts.find(t.signature);
        const double observed = it == tally.counts.end() ? 0.0 : static_cast<double>(it->second);
        bins.emplace_back(observed, expected);
        rest_obs -= observed;
        rest_exp -= expected;
    }
    if (rest_exp >= min_expected) {
        bins.emplace_back(rest_obs, rest_exp);
    } else if (!bins.empty()) {
        bins.back().first += rest_obs;
        bins.back().second += rest_exp;
    }
    ChiSquareResult r;
    r.bins = bins.size();
    if (bins.size() < 2) return r;
    for (auto [o, e] : bins) r.statistic += (o - e) * (o - e) / e;
    r.degrees_of_freedom = bins.size() - 1;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(r.degrees_of_freedom));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

void write_census_csv(std::ostream& out, const CensusReport& report) {
    out << "signature,count,observed_probability,theory_probability,rank_theory,rank_theory_observed,rank_observed,"
           "tied\n";
    for (const auto& e : report.entries)
        out << '"' << e.signature.to_string() << "\"," << e.count << ',' << sci(e.observed_probability) << ','
            << sci(e.theory_probability) << ',' << e.rank_theory << ',' << e.rank_theory_observed << ','
            << e.rank_observed << ',' << (e.tied_observed ? "true" : "false") << '\n';
}

void write_rank_scatter(std::ostream& out, const CensusReport& report) {
    out << "rank_theory_observed,rank_observed,signature\n";
    for (const auto& e : report.entries)
        out << e.rank_theory_observed << ',' << e.rank_observed << ",\"" << e.signature.to_string() << "\"\n";
}

nlohmann::json to_json(const CensusReport& report) {
    nlohmann::json j;
    j["k"] = report.k;
    j["total_cliques"] = report.total_cliques;
    j["weight_mode"] = to_string(report.mode);
    j["spearman"] = report.spearman;
    j["observed_ties"] = report.has_observed_ties;
    auto& obs = j["observed"] = nlohmann::json::array();
    for (const auto& e : report.entries)
        obs.push_back({{"signature", e.signature.counts},
                       {"count", e.count},
                       {"observed_probability", e.observed_probability},
                       {"theory_probability", e.theory_probability},
                       {"rank_theory", e.rank_theory},
                       {"rank_theory_observed", e.rank_theory_observed},
                       {"rank_observed", e.rank_observed},
                       {"tied", e.tied_observed}});
    auto& un = j["unobserved"] = nlohmann::json::array();
    for (const auto& u : report.unobserved)
        un.push_back({{"signature", u.signature.counts},
                      {"rank_theory", u.rank_theory},
                      {"theory_probability", u.theory_probability}});
    return j;
}

}  // namespace hypersub
