#pragma once

#include <cstdint>
#include <vector>

#include "lca/core.hpp"

namespace lca {

/// Subdiagonal code of a permutation: c(x) counts the elements with
/// smaller id ranked below x, so 0 <= c(x) <= x-1 and c(1) = 0.
struct LehmerCode {
    std::vector<int> c;

    int size() const { return static_cast<int>(c.size()); }
    int at(int x) const { return c[x - 1]; }

    bool operator==(const LehmerCode& other) const = default;
};

/// Code pair for a bucket order: c is the code of the tie-broken
/// permutation, c_prime additionally counts tied smaller-id elements,
/// and in_count(x) = c_prime(x) - c(x) + 1 is the within-bucket index
/// of x among its bucket-mates with smaller id.
struct LehmerPair {
    LehmerCode code;
    std::vector<int> c_prime;
    std::vector<int> in_count;

    int size() const { return code.size(); }

    bool operator==(const LehmerPair& other) const = default;
};

LehmerCode encode(const Permutation& sigma);
Permutation decode(const LehmerCode& code);

LehmerPair encode_partial(const PartialRanking& sigma);
PartialRanking decode_partial(const LehmerPair& pair);

/// Breaks ties within each bucket by ascending element id.
Permutation tie_break(const PartialRanking& sigma);

/// Sum of code entries; equals the Kendall tau distance to the identity.
std::int64_t kendall_from_code(const LehmerCode& code);

/// Throws NotSubdiagonal unless 0 <= c(x) <= x-1 for all x.
void check_subdiagonal(const LehmerCode& code);

/// Batch encoding of every ranking in the sample (permutations get
/// c_prime = c). Deterministic for any thread count.
std::vector<LehmerPair> encode_sample(const RankingSample& sample, int threads = 1);

}  // namespace lca
