#include "hypersub/signatures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hypersub/error.hpp"

namespace hypersub {
namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

void check_order(std::size_t k) {
    if (k < kMinSignatureOrder || k > kMaxSignatureOrder)
        throw InputError("signature order k = " + std::to_string(k) + " is outside " +
                         std::to_string(kMinSignatureOrder) + ".." + std::to_string(kMaxSignatureOrder));
}

// All subsets of [k] with at least two elements, as bitmasks: pairs first,
// then larger sets.
struct SubsetSpace {
    explicit SubsetSpace(std::size_t k) : k(k) {
        for (std::uint32_t s = 0; s < (1u << k); ++s)
            if (std::popcount(s) == 2) subsets.push_back(s);
        num_pairs = subsets.size();
        for (std::uint32_t s = 0; s < (1u << k); ++s)
            if (std::popcount(s) >= 3) subsets.push_back(s);
        for (std::uint32_t s : subsets) {
            std::uint32_t cover = 0;  // over pair indices
            for (std::size_t j = 0; j < num_pairs; ++j)
                if ((subsets[j] & ~s) == 0) cover |= 1u << j;
            pair_cover.push_back(cover);
        }
    }
    std::size_t k;
    std::size_t num_pairs = 0;
    std::vector<std::uint32_t> subsets;
    std::vector<std::uint32_t> pair_cover;
};

// Counts hypergraphs built from unions of the given orbits (each a list of
// subset indices, all members of one orbit having equal size) whose
// 2-section is complete, by signature.
std::map<std::vector<std::uint32_t>, std::uint64_t> count_by_signature(
    const SubsetSpace& space, const std::vector<std::vector<std::size_t>>& orbits) {
    const std::size_t k = space.k;
    const std::uint32_t all_pairs = (space.num_pairs == 32) ? ~0u : ((1u << space.num_pairs) - 1);
    std::vector<std::size_t> pair_orbits, big_orbits;
    for (std::size_t o = 0; o < orbits.size(); ++o)
        (orbits[o].front() < space.num_pairs ? pair_orbits : big_orbits).push_back(o);

    std::vector<std::uint32_t> orbit_cover(orbits.size(), 0);
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (auto idx : orbits[o]) orbit_cover[o] |= space.pair_cover[idx];

    std::map<std::vector<std::uint32_t>, std::uint64_t> result;
    std::vector<std::uint32_t> counts(k - 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << big_orbits.size()); ++mask) {
        std::fill(counts.begin(), counts.end(), 0);
        std::uint32_t covered = 0;
        for (std::size_t b = 0; b < big_orbits.size(); ++b) {
            if (!(mask >> b & 1)) continue;
            const auto& orbit = orbits[big_orbits[b]];
            covered |= orbit_cover[big_orbits[b]];
            counts[std::popcount(space.subsets[orbit.front()]) - 2] += static_cast<std::uint32_t>(orbit.size());
        }
        // Pair orbits touching an uncovered pair are forced; the rest are free.
        std::uint32_t forced_size = 0;
        std::vector<std::uint64_t> ways{1};  // ways[t]: free choices adding t pairs
        for (std::size_t o : pair_orbits) {
            const auto size = static_cast<std::uint32_t>(orbits[o].size());
            if ((orbit_cover[o] & ~covered) != 0) {
                forced_size += size;
                covered |= orbit_cover[o];
            } else {
                std::vector<std::uint64_t> next(ways.size() + size, 0);
                for (std::size_t t = 0; t < ways.size(); ++t) {
                    next[t] += ways[t];
                    next[t + size] += ways[t];
                }
                ways = std::move(next);
            }
        }
        if (covered != all_pairs) continue;
        for (std::size_t t = 0; t < ways.size(); ++t) {
            if (ways[t] == 0) continue;
            counts[0] = forced_size + static_cast<std::uint32_t>(t);
            result[counts] += ways[t];
        }
    }
    return result;
}

WeightTable compute_weights(std::size_t k) {
    SubsetSpace space(k);
    const std::size_t m = space.subsets.size();

    std::vector<std::vector<std::size_t>> singletons(m);
    for (std::size_t i = 0; i < m; ++i) singletons[i] = {i};
    WeightTable table;
    for (auto& [counts, w] : count_by_signature(space, singletons))
        table[Signature::from_counts(k, counts)].labelled = w;

    // Burnside over pairs (pi, sigma): the number of (class, automorphism)
    // pairs is (1/k!) * sum over pairs of the hypergraphs fixed by both.
    std::vector<std::vector<std::size_t>> perm_action;
    std::vector<Vertex> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::uint32_t, std::size_t> index_of;
    for (std::size_t i = 0; i < m; ++i) index_of[space.subsets[i]] = i;
    do {
        std::vector<std::size_t> act(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::uint32_t image = 0;
            for (Vertex v = 0; v < k; ++v)
                if (space.subsets[i] >> v & 1) image |= 1u << perm[v];
            act[i] = index_of.at(image);
        }
        perm_action.push_back(std::move(act));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<std::vector<std::size_t>, std::uint64_t> partitions;  // orbit labels -> #pairs
    std::vector<std::size_t> parent(m);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : perm_action) {
        for (const auto& b : perm_action) {
            std::iota(parent.begin(), parent.end(), 0);
            for (std::size_t i = 0; i < m; ++i) {
                parent[find(i)] = find(a[i]);
                parent[find(i)] = find(b[i]);
            }
            std::vector<std::size_t> label(m);
            std::map<std::size_t, std::size_t> relabel;
            for (std::size_t i = 0; i < m; ++i) label[i] = relabel.emplace(find(i), relabel.size()).first->second;
            ++partitions[label];
        }
    }
    std::map<std::vector<std::uint32_t>, std::uint64_t> fixed_pairs;
    for (const auto& [label, multiplicity] : partitions) {
        const std::size_t num_orbits = *std::max_element(label.begin(), label.end()) + 1;
        std::vector<std::vector<std::size_t>> orbits(num_orbits);
        for (std::size_t i = 0; i < m; ++i) orbits[label[i]].push_back(i);
        for (auto& [counts, w] : count_by_signature(space, orbits)) fixed_pairs[counts] += w * multiplicity;
    }
    const std::uint64_t group_order = perm_action.size();
    for (auto& [counts, total] : fixed_pairs) {
        if (total % group_order != 0) throw std::logic_error("Burnside count not divisible by k!");
        table.at(Signature::from_counts(k, counts)).aut_literal = total / group_order;
    }
    return table;
}

std::mutex cache_mutex;
std::map<std::size_t, WeightTable>& weight_cache() {
    static std::map<std::size_t, WeightTable> cache;
    return cache;
}

}  // namespace

std::string Signature::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(counts[i]);
    }
    return s;
}

Signature Signature::from_counts(std::size_t k, std::vector<std::uint32_t> counts) {
    if (k < 2) throw InputError("signature order must be at least 2");
    if (counts.size() != k - 1)
        throw InputError("signature of order " + std::to_string(k) + " needs " + std::to_string(k - 1) + " counts");
    for (std::size_t r = 2; r <= k; ++r)
        if (counts[r - 2] > choose(k, r))
            throw InputError("e_" + std::to_string(r) + " = " + std::to_string(counts[r - 2]) + " exceeds C(" +
                             std::to_string(k) + "," + std::to_string(r) + ")");
    return Signature{k, std::move(counts)};
}

Signature Signature::parse(std::size_t k, const std::string& text) {
    std::vector<std::uint32_t> counts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            const auto value = std::stoul(token, &used);
            if (token.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(token);
            counts.push_back(static_cast<std::uint32_t>(value));
        } catch (const std::logic_error&) {
            throw InputError("malformed signature '" + text + "'");
        }
    }
    return from_counts(k, std::move(counts));
}

Signature Signature::of(const Hypergraph& h) {
    const std::size_t k = h.num_vertices();
    std::vector<std::uint32_t> counts(k >= 2 ? k - 1 : 0, 0);
    for (EdgeId e = 0; e < h.num_edges(); ++e)
        if (h.edge_size(e) >= 2) ++counts[h.edge_size(e) - 2];
    return from_counts(k, std::move(counts));
}

const WeightTable& signature_weights(std::size_t k) {
    check_order(k);
    std::lock_guard lock(cache_mutex);
    auto& cache = weight_cache();
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, compute_weights(k)).first;
    return it->second;
}

std::vector<Signature> enumerate_feasible(std::size_t k) {
    std::vector<Signature> out;
    for (const auto& [sig, w] : signature_weights(k)) out.push_back(sig);
    return out;
}

std::uint64_t labelled_weight(const Signature& sig) {
    const auto& table = signature_weights(sig.k);
    auto it = table.find(sig);
    return it == table.end() ? 0 : it->second.labelled;
}

std::uint64_t aut_literal_weight(const Signature& sig) {
    const auto& table = signature_weights(sig.k);
    auto it = table.find(sig);
    return it == table.end() ? 0 : it->second.aut_literal;
}

std::uint64_t signature_lattice_size(std::size_t k) {
    std::uint64_t total = 1;
    for (std::size_t r = 2; r <= k; ++r) total *= choose(k, r) + 1;
    return total;
}

std::uint64_t labelled_total(const Signature& sig) {
    std::uint64_t total = 1;
    for (std::size_t r = 2; r <= sig.k; ++r) total *= choose(choose(sig.k, r), sig[r]);
    return total;
}

nlohmann::json weights_to_json(std::size_t k, const WeightTable& table) {
    auto list = nlohmann::json::array();
    for (const auto& [sig, w] : table)
        list.push_back({{"k", k}, {"signature", sig.counts}, {"weight", w.labelled}, {"aut_weight", w.aut_literal}});
    return list;
}

std::map<std::size_t, WeightTable> weights_from_json(const nlohmann::json& j) {
    std::map<std::size_t, WeightTable> out;
    try {
        for (const auto& item : j) {
            const auto k = item.at("k").get<std::size_t>();
            auto sig = Signature::from_counts(k, item.at("signature").get<std::vector<std::uint32_t>>());
            out[k][sig] = SignatureWeights{item.at("weight").get<std::uint64_t>(),
                                           item.value("aut_weight", std::uint64_t{0})};
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed weight cache: ") + e.what());
    }
    return out;
}

const WeightTable& signature_weights_cached(std::size_t k, const std::string& path) {
    check_order(k);
    std::map<std::size_t, WeightTable> existing;
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw InputError("unreadable weight cache " + path + ": " + e.what());
        }
        existing = weights_from_json(j);
    }
    const auto& table = signature_weights(k);
    if (auto it = existing.find(k); it != existing.end()) {
        if (it->second != table) throw InputError("weight cache " + path + " disagrees with the enumeration for k = " +
                                                  std::to_string(k));
        return table;
    }
    nlohmann::json all = nlohmann::json::array();
    for (auto& [other_k, t] : existing)
        for (auto& item : weights_to_json(other_k, t)) all.push_back(item);
    for (auto& item : weights_to_json(k, table)) all.push_back(item);
    std::ofstream out(path);
    if (!out) throw InputError("cannot write weight cache " + path);
    out << all.dump() << '\n';
    return table;
}

std::string to_string(WeightMode m) { return m == WeightMode::labelled ? "labelled" : "aut-literal"; }

WeightMode weight_mode_from_string(const std::string& s) {
    if (s == "labelled") return WeightMode::labelled;
    if (s == "aut-literal") return WeightMode::aut_literal;
    throw InputError("unknown weight mode '" + s + "' (expected labelled or aut-literal)");
}

const OriginationEntry* OriginationTable::find(const Signature& s) const {
    for (const auto& e : entries)
        if (e.signature == s) return &e;
    return nullptr;
}

OriginationTable origination_distribution(std::size_t k, const NumericSequence& p, std::uint64_t n,
                                          WeightMode mode) {
    check_order(k);
    if (p.max_size() < k)
        throw InputError("origination for K_" + std::to_string(k) + " needs M >= " + std::to_string(k));
    OriginationTable table;
    table.k = k;
    table.mode = mode;
    for (std::size_t r = 2; r <= k; ++r) table.extension_probability[r] = p_triple_prime(p, n, r);

    const double neg_inf = -std::numeric_limits<double>::infinity();
    double max_log = neg_inf;
    for (const auto& [sig, w] : signature_weights(k)) {
        OriginationEntry entry;
        entry.signature = sig;
        entry.weight = mode == WeightMode::labelled ? w.labelled : w.aut_literal;
        double log_mass = std::log(static_cast<double>(entry.weight));
        for (std::size_t r = 2; r <= k; ++r) {
            const double q = table.extension_probability[r];
            const double present = sig[r];
            const double absent = static_cast<double>(choose(k, r)) - present;
            if (present > 0) log_mass += q > 0 ? present * std::log(q) : neg_inf;
            if (absent > 0) log_mass += q < 1 ? absent * std::log1p(-q) : neg_inf;
        }
        entry.log_mass = log_mass;
        max_log = std::max(max_log, log_mass);
        table.entries.push_back(std::move(entry));
    }
    if (max_log == neg_inf)
        throw InputError("origination distribution is undefined: every feasible signature has zero mass");

    double sum = 0.0;
    for (auto& e : table.entries) sum += std::exp(e.log_mass - max_log);
    table.log_normalizer = max_log + std::log(sum);
    for (auto& e : table.entries) e.probability = std::exp(e.log_mass - table.log_normalizer);

    // Masses equal to ~1e-10 relative share a key, so exact ties survive
    // rounding noise in the log-space products.
    auto key = [](const OriginationEntry& e) {
        return std::isinf(e.log_mass) ? std::numeric_limits<long long>::min() : std::llround(e.log_mass * 1e10);
    };
    std::stable_sort(table.entries.begin(), table.entries.end(),
                     [&](const OriginationEntry& a, const OriginationEntry& b) {
                         const auto ka = key(a), kb = key(b);
                         if (ka != kb) return ka > kb;
                         return a.signature < b.signature;
                     });
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        table.entries[i].rank = i + 1;
        const auto ki = key(table.entries[i]);
        const bool prev = i > 0 && key(table.entries[i - 1]) == ki;
        const bool next = i + 1 < table.entries.size() && key(table.entries[i + 1]) == ki;
        table.entries[i].tied = prev || next;
    }
    return table;
}

std::vector<std::pair<Signature, std::size_t>> rank(const OriginationTable& table) {
    std::vector<std::pair<Signature, std::size_t>> out;
    for (const auto& e : table.entries) out.emplace_back(e.signature, e.rank);
    return out;
}

void write_origination_csv(std::ostream& out, const OriginationTable& table) {
    out << "signature,weight,probability,rank\n";
    char buf[64];
    for (const auto& e : table.entries) {
        std::snprintf(buf, sizeof buf, "%.10e", e.probability);
        out << '"' << e.signature.to_string() << "\"," << e.weight << ',' << buf << ',' << e.rank << '\n';
    }
}

nlohmann::json to_json(const OriginationTable& table) {
    nlohmann::json j;
    j["k"] = table.k;
    j["weight_mode"] = to_string(table.mode);
    for (auto [r, q] : table.extension_probability) j["extension_probability"][std::to_string(r)] = q;
    j["log_normalizer"] = table.log_normalizer;
    auto& list = j["signatures"] = nlohmann::json::array();
    for (const auto& e : table.entries)
        list.push_back({{"signature", e.signature.counts},
                        {"weight", e.weight},
                        {"probability", e.probability},
                        {"rank", e.rank},
                        {"tied", e.tied}});
    return j;
}

}  // namespace hypersub
