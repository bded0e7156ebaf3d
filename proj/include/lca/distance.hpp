#pragma once

#include <cstdint>
#include <string>

#include "lca/core.hpp"

namespace lca {

/// Exact half-integer value: Kemeny-style distances and bucket positions
/// are multiples of 1/2, stored as a count of halves so comparisons in the
/// aggregators never touch floating point.
struct HalfInt {
    std::int64_t halves = 0;

    static HalfInt whole(std::int64_t v) { return {2 * v}; }
    static HalfInt from_halves(std::int64_t h) { return {h}; }

    HalfInt operator+(HalfInt o) const { return {halves + o.halves}; }
    HalfInt operator-(HalfInt o) const { return {halves - o.halves}; }
    HalfInt& operator+=(HalfInt o) {
        halves += o.halves;
        return *this;
    }
    HalfInt operator*(std::int64_t k) const { return {halves * k}; }
    auto operator<=>(const HalfInt&) const = default;

    bool is_integral() const { return halves % 2 == 0; }
    double to_double() const { return static_cast<double>(halves) / 2.0; }
    std::string str() const;
};

HalfInt abs_diff(HalfInt a, HalfInt b);

enum class Metric { Kendall, Kemeny, KemenyUnrated, Footrule };

Metric metric_from_string(const std::string& name);
std::string to_string(Metric metric);

/// Number of discordant element pairs, counted once per unordered pair.
std::int64_t kendall_tau(const Permutation& pi, const Permutation& sigma);

/// Kendall tau extended to bucket orders: opposite strict orders count 1,
/// a tie against a strict order counts 1/2.
HalfInt kemeny(const PartialRanking& pi, const PartialRanking& sigma);

/// As kemeny, but a tie contributes its 1/2 only when the ranking holding
/// the tie rates both elements (elements in an unrated tail bucket do not).
HalfInt kemeny_unrated(const PartialRanking& pi, const PartialRanking& sigma);

/// Average rank of the bucket holding x.
HalfInt position(const PartialRanking& sigma, int x);

/// Positions of all elements, computed in one pass.
std::vector<HalfInt> positions(const PartialRanking& sigma);

HalfInt spearman_footrule(const PartialRanking& pi, const PartialRanking& sigma);
HalfInt spearman_footrule(const Permutation& pi, const Permutation& sigma);

/// Distance between two rankings of any kind under the given metric.
/// Kendall requires two permutations.
HalfInt pair_distance(const Ranking& a, const Ranking& b, Metric metric);

/// D(Sigma, sigma): sum of pair distances from every member of the sample.
/// Exact integer accumulation, so the result is thread-count independent.
HalfInt cumulative(const RankingSample& sample, const Ranking& sigma, Metric metric,
                   int threads = 1);

/// D_av = D(Sigma, sigma) / m.
double average_distance(const RankingSample& sample, const Ranking& sigma, Metric metric,
                        int threads = 1);

}  // namespace lca
