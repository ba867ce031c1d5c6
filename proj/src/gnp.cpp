#include "hypersub/gnp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_set>

#include "hypersub/error.hpp"

namespace hypersub {

using u128 = unsigned __int128;

NumericSequence::NumericSequence(std::size_t max_size, const std::map<std::size_t, double>& probs)
    : max_size_(max_size), p_(max_size + 1, 0.0) {
    for (auto [r, p] : probs) {
        if (r < 1 || r > max_size)
            throw InputError("probability level " + std::to_string(r) + " outside 1..M");
        if (!(p >= 0.0 && p <= 1.0))
            throw InputError("p_" + std::to_string(r) + " = " + std::to_string(p) + " is not in [0,1]");
        p_[r] = p;
    }
}

PowerLawSequence::PowerLawSequence(std::size_t max_size, std::map<std::size_t, PowerLawTerm> terms)
    : max_size_(max_size), terms_(std::move(terms)) {
    for (const auto& [r, t] : terms_) {
        if (r < 1 || r > max_size)
            throw InputError("power-law level " + std::to_string(r) + " outside 1..M");
        if (!(t.coeff > 0.0)) throw InputError("power-law coefficient must be positive");
        if (t.alpha.numerator() < 0) throw InputError("power-law exponent alpha must be >= 0");
        if (t.alpha.numerator() == 0 && t.coeff > 1.0) throw InputError("p_r = c > 1 is not a probability");
    }
}

std::optional<PowerLawTerm> PowerLawSequence::term(std::size_t r) const {
    auto it = terms_.find(r);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
}

Exponent PowerLawSequence::level_exponent(std::size_t r) const {
    auto t = term(r);
    if (!t) return Exponent::neg_infinity();
    return Exponent(-t->alpha);
}

Exponent PowerLawSequence::prime_exponent(std::size_t r) const {
    Exponent best = Exponent::neg_infinity();
    for (std::size_t i = 0; r + i <= max_size_; ++i) {
        auto term_exp = Exponent(static_cast<std::int64_t>(i)) + level_exponent(r + i);
        if (term_exp > best) best = term_exp;
    }
    return best;
}

std::optional<std::size_t> PowerLawSequence::dominant_padding(std::size_t r) const {
    std::optional<std::size_t> arg;
    Exponent best = Exponent::neg_infinity();
    for (std::size_t i = 0; r + i <= max_size_; ++i) {
        auto term_exp = Exponent(static_cast<std::int64_t>(i)) + level_exponent(r + i);
        if (!term_exp.is_neg_infinity() && (!arg || term_exp > best)) {
            best = term_exp;
            arg = i;
        }
    }
    return arg;
}

NumericSequence PowerLawSequence::evaluate(double n) const {
    std::map<std::size_t, double> probs;
    for (const auto& [r, t] : terms_)
        probs[r] = std::min(1.0, t.coeff * std::pow(n, -boost::rational_cast<double>(t.alpha)));
    return NumericSequence(max_size_, probs);
}

ProbSequence prob_sequence_from_json(const nlohmann::json& j) {
    try {
        const auto max_size = j.at("M").get<std::size_t>();
        if (j.contains("numeric")) {
            std::map<std::size_t, double> probs;
            for (const auto& [key, value] : j.at("numeric").items())
                probs[std::stoul(key)] = value.get<double>();
            return NumericSequence(max_size, probs);
        }
        if (j.contains("powerlaw")) {
            std::map<std::size_t, PowerLawTerm> terms;
            for (const auto& [key, value] : j.at("powerlaw").items()) {
                PowerLawTerm t;
                t.coeff = value.value("c", 1.0);
                const auto& alpha = value.at("alpha");
                if (alpha.is_string())
                    t.alpha = parse_rational(alpha.get<std::string>());
                else if (alpha.is_number_integer())
                    t.alpha = Rational(alpha.get<std::int64_t>());
                else
                    t.alpha = parse_rational(alpha.dump());  // decimal literal, read exactly
                terms[std::stoul(key)] = t;
            }
            return PowerLawSequence(max_size, std::move(terms));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed probability sequence: ") + e.what());
    } catch (const std::logic_error& e) {
        throw InputError(std::string("malformed probability sequence: ") + e.what());
    }
    throw InputError("probability sequence needs a \"numeric\" or \"powerlaw\" member");
}

nlohmann::json to_json(const ProbSequence& p) {
    nlohmann::json j;
    if (const auto* num = std::get_if<NumericSequence>(&p)) {
        j["M"] = num->max_size();
        j["numeric"] = nlohmann::json::object();
        for (std::size_t r = 1; r <= num->max_size(); ++r)
            if ((*num)[r] > 0.0) j["numeric"][std::to_string(r)] = (*num)[r];
    } else {
        const auto& pl = std::get<PowerLawSequence>(p);
        j["M"] = pl.max_size();
        j["powerlaw"] = nlohmann::json::object();
        for (const auto& [r, t] : pl.terms())
            j["powerlaw"][std::to_string(r)] = {{"c", t.coeff}, {"alpha", format_rational(t.alpha)}};
    }
    return j;
}

u128 binomial_exact(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr u128 kMax = ~u128(0);
    u128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is exact at every step.
        const u128 factor = n - k + i;
        if (result > kMax / factor) return kMax;
        result = result * factor / i;
    }
    return result;
}

double binomial_real(double n, std::uint64_t k) {
    if (static_cast<double>(k) > n) return 0.0;
    if (k <= 64) {
        double result = 1.0;
        for (std::uint64_t i = 1; i <= k; ++i) result *= (n - static_cast<double>(k - i)) / static_cast<double>(i);
        return result;
    }
    const double kd = static_cast<double>(k);
    return std::exp(std::lgamma(n + 1) - std::lgamma(kd + 1) - std::lgamma(n - kd + 1));
}

NumericSequence from_edge_counts(std::uint64_t n, const std::map<std::size_t, std::uint64_t>& counts) {
    std::size_t max_size = 0;
    std::map<std::size_t, double> probs;
    for (auto [i, m] : counts) {
        if (i < 1) throw InputError("edge size must be at least 1");
        const u128 total = binomial_exact(n, i);
        if (u128(m) > total)
            throw InputError("m_" + std::to_string(i) + " = " + std::to_string(m) +
                             " exceeds C(n," + std::to_string(i) + ")");
        max_size = std::max(max_size, i);
        probs[i] = m == 0 ? 0.0 : static_cast<double>(m) / binomial_real(static_cast<double>(n), i);
        if (u128(m) == total) probs[i] = 1.0;
    }
    return NumericSequence(max_size, probs);
}

double p_prime(const NumericSequence& p, double n, std::size_t r) {
    double sum = 0.0;
    double weight = 1.0;
    for (std::size_t j = r; j <= p.max_size(); ++j, weight *= n) sum += weight * p[j];
    return sum;
}

double p_double_prime(const NumericSequence& p, double n, std::size_t r) {
    double sum = 0.0;
    for (std::size_t j = r; j <= p.max_size(); ++j) sum += binomial_real(n, j - r) * p[j];
    return sum;
}

double p_triple_prime(const NumericSequence& p, std::uint64_t n, std::size_t r) {
    double log_miss = 0.0;
    for (std::size_t j = r; j <= p.max_size(); ++j) {
        const double pj = p[j];
        if (pj == 0.0) continue;
        const double count = binomial_real(static_cast<double>(n - std::min<std::uint64_t>(n, r)), j - r);
        if (count == 0.0) continue;
        if (pj >= 1.0) return 1.0;
        log_miss += count * std::log1p(-pj);
    }
    return -std::expm1(log_miss);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over a golden-ratio stride.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<Vertex>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (Vertex x : v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

// Colex unranking of an r-subset of {0..n-1}.
std::vector<Vertex> unrank_subset(std::uint64_t index, std::uint64_t n, std::size_t r) {
    std::vector<Vertex> out(r);
    std::uint64_t hi = n;
    for (std::size_t i = r; i >= 1; --i) {
        // Largest c < hi with C(c, i) <= index.
        std::uint64_t lo = i - 1, top = hi - 1;
        while (lo < top) {
            std::uint64_t mid = lo + (top - lo + 1) / 2;
            if (binomial_exact(mid, i) <= index)
                lo = mid;
            else
                top = mid - 1;
        }
        out[i - 1] = static_cast<Vertex>(lo);
        index -= static_cast<std::uint64_t>(binomial_exact(lo, i));
        hi = lo;
    }
    return out;
}

// r distinct uniform vertices (Floyd's algorithm), sorted.
std::vector<Vertex> random_subset(std::uint64_t n, std::size_t r, std::mt19937_64& rng) {
    std::vector<Vertex> chosen;
    chosen.reserve(r);
    for (std::uint64_t j = n - r; j < n; ++j) {
        auto t = static_cast<Vertex>(std::uniform_int_distribution<std::uint64_t>(0, j)(rng));
        if (std::find(chosen.begin(), chosen.end(), t) != chosen.end())
            chosen.push_back(static_cast<Vertex>(j));
        else
            chosen.push_back(t);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace

Hypergraph sample(std::uint64_t n, const NumericSequence& p, std::uint64_t seed,
                  const SampleOptions& options) {
    if (n < 1) throw std::invalid_argument("sample requires n >= 1");
    if (n > std::numeric_limits<Vertex>::max()) throw GuardError("n exceeds the vertex id range");

    std::vector<std::vector<Vertex>> edges;
    for (std::size_t r = 1; r <= p.max_size(); ++r) {
        const double pr = p[r];
        if (pr == 0.0 || r > n) continue;
        const double expected = binomial_real(static_cast<double>(n), r) * pr;
        if (expected > options.max_expected_edges)
            throw GuardError("level " + std::to_string(r) + " expects " + std::to_string(expected) +
                             " edges, above the budget of " + std::to_string(options.max_expected_edges));

        std::mt19937_64 rng(derive_seed(seed, r));
        const u128 total = binomial_exact(n, r);
        const bool fits = total <= u128(std::numeric_limits<std::int64_t>::max());
        std::uint64_t count = 0;
        if (pr >= 1.0 && fits) {
            count = static_cast<std::uint64_t>(total);
        } else if (fits) {
            count = static_cast<std::uint64_t>(
                std::binomial_distribution<std::int64_t>(static_cast<std::int64_t>(total), pr)(rng));
        } else {
            count = static_cast<std::uint64_t>(std::poisson_distribution<std::int64_t>(expected)(rng));
        }
        if (count == 0) continue;

        if (fits && u128(count) * 4 > total) {
            // Dense level: Floyd selection of subset ranks.
            const auto t = static_cast<std::uint64_t>(total);
            std::unordered_set<std::uint64_t> picked;
            std::vector<std::uint64_t> order;
            for (std::uint64_t j = t - count; j < t; ++j) {
                auto x = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
                if (!picked.insert(x).second) x = j, picked.insert(j);
                order.push_back(x);
            }
            for (auto idx : order) edges.push_back(unrank_subset(idx, n, r));
        } else {
            std::unordered_set<std::vector<Vertex>, VecHash> seen;
            seen.reserve(count * 2);
            while (seen.size() < count) {
                auto e = random_subset(n, r, rng);
                if (seen.insert(e).second) edges.push_back(std::move(e));
            }
        }
    }
    return Hypergraph::from_edges(n, edges);
}

}  // namespace hypersub
