#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hypersub/exponent.hpp"
#include "hypersub/hypergraph.hpp"

namespace hypersub {

// Numeric M-bounded sequence for a fixed n: p_r for r = 1..M, zero above M.
class NumericSequence {
public:
    NumericSequence() = default;
    // Throws InputError if any p_r lies outside [0,1] or a level exceeds M.
    NumericSequence(std::size_t max_size, const std::map<std::size_t, double>& probs);

    std::size_t max_size() const { return max_size_; }
    double operator[](std::size_t r) const { return r >= 1 && r <= max_size_ ? p_[r] : 0.0; }

private:
    std::size_t max_size_ = 0;
    std::vector<double> p_{0.0};  // p_[0] unused
};

// p_r = coeff * n^(-alpha).
struct PowerLawTerm {
    double coeff = 1.0;
    Rational alpha{0};
};

// Symbolic sequence; levels absent from the map have p_r = 0 (alpha = +inf).
class PowerLawSequence {
public:
    PowerLawSequence() = default;
    // Throws InputError on coeff <= 0, alpha < 0, p_r > 1 at alpha = 0,
    // or a level above M.
    PowerLawSequence(std::size_t max_size, std::map<std::size_t, PowerLawTerm> terms);

    std::size_t max_size() const { return max_size_; }
    const std::map<std::size_t, PowerLawTerm>& terms() const { return terms_; }
    std::optional<PowerLawTerm> term(std::size_t r) const;

    // Exponent of p_r itself: -alpha_r, or -inf when p_r = 0.
    Exponent level_exponent(std::size_t r) const;
    // Exponent of p'_r (equivalently p''_r): max over i of (i - alpha_{r+i}).
    Exponent prime_exponent(std::size_t r) const;
    // i(r): the i attaining prime_exponent(r), smallest on ties; nullopt when
    // p'_r = 0.
    std::optional<std::size_t> dominant_padding(std::size_t r) const;

    NumericSequence evaluate(double n) const;

private:
    std::size_t max_size_ = 0;
    std::map<std::size_t, PowerLawTerm> terms_;
};

using ProbSequence = std::variant<NumericSequence, PowerLawSequence>;

// {"M": int, "numeric": {"r": p_r}} or
// {"M": int, "powerlaw": {"r": {"c": float, "alpha": "num/den" or a number}}}.
ProbSequence prob_sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProbSequence& p);

// C(n, k) exactly, saturating at the maximum of unsigned __int128.
unsigned __int128 binomial_exact(std::uint64_t n, std::uint64_t k);
// C(n, k) in floating point (product form for small k, log-gamma otherwise).
double binomial_real(double n, std::uint64_t k);

// p_i = m_i / C(n, i). Throws InputError if some m_i exceeds C(n, i).
NumericSequence from_edge_counts(std::uint64_t n, const std::map<std::size_t, std::uint64_t>& counts);

// p'_r = p_r + n p_{r+1} + ... + n^{M-r} p_M.
double p_prime(const NumericSequence& p, double n, std::size_t r);
// p''_r = p_r + n p_{r+1} + C(n,2) p_{r+2} + ... + C(n,M-r) p_M.
double p_double_prime(const NumericSequence& p, double n, std::size_t r);
// p'''_r = 1 - prod_j (1 - p_j)^{C(n-r, j-r)}, evaluated in log space.
double p_triple_prime(const NumericSequence& p, std::uint64_t n, std::size_t r);

struct SampleOptions {
    // Refuse a level whose expected edge count C(n,r) p_r exceeds this.
    double max_expected_edges = 5e7;
};

// One draw of H(n, p). Deterministic in (n, p, seed). Throws GuardError when
// a level exceeds the budget.
Hypergraph sample(std::uint64_t n, const NumericSequence& p, std::uint64_t seed,
                  const SampleOptions& options = {});

// Seed for the i-th member of a family of samples derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hypersub
