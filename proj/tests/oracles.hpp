#pragma once

// Brute-force reference implementations, kept independent of the library's
// fast paths on purpose: every oracle works straight from the definitions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "lca/core.hpp"
#include "lca/distance.hpp"
#include "lca/rng.hpp"

namespace oracles {

inline std::int64_t brute_kendall(const lca::Permutation& pi, const lca::Permutation& sigma) {
    std::int64_t count = 0;
    for (int x = 1; x <= pi.size(); ++x)
        for (int y = x + 1; y <= pi.size(); ++y) {
            const bool a = pi.rank_of(x) < pi.rank_of(y);
            const bool b = sigma.rank_of(x) < sigma.rank_of(y);
            if (a != b) ++count;
        }
    return count;
}

inline int rel(int a, int b) { return a < b ? -1 : (a == b ? 0 : 1); }

inline std::int64_t brute_kemeny_halves(const lca::PartialRanking& pi,
                                        const lca::PartialRanking& sigma) {
    std::int64_t halves = 0;
    for (int x = 1; x <= pi.size(); ++x)
        for (int y = x + 1; y <= pi.size(); ++y) {
            const int a = rel(pi.bucket_of(x), pi.bucket_of(y));
            const int b = rel(sigma.bucket_of(x), sigma.bucket_of(y));
            if (a != 0 && b != 0 && a != b) halves += 2;
            else if (a == 0 && b != 0) halves += 1;
            else if (b == 0 && a != 0) halves += 1;
        }
    return halves;
}

inline std::int64_t brute_kemeny_unrated_halves(const lca::PartialRanking& pi,
                                                const lca::PartialRanking& sigma) {
    std::int64_t halves = 0;
    for (int x = 1; x <= pi.size(); ++x)
        for (int y = x + 1; y <= pi.size(); ++y) {
            const int a = rel(pi.bucket_of(x), pi.bucket_of(y));
            const int b = rel(sigma.bucket_of(x), sigma.bucket_of(y));
            if (a != 0 && b != 0 && a != b) halves += 2;
            else if (a == 0 && b != 0 && pi.is_rated(x) && pi.is_rated(y)) halves += 1;
            else if (b == 0 && a != 0 && sigma.is_rated(x) && sigma.is_rated(y)) halves += 1;
        }
    return halves;
}

/// All permutations consistent with the bucket order.
inline std::vector<lca::Permutation> all_tie_breaks(const lca::PartialRanking& order) {
    const int n = order.size();
    std::vector<int> ranks(static_cast<size_t>(n));
    std::iota(ranks.begin(), ranks.end(), 1);
    std::vector<lca::Permutation> result;
    do {
        lca::Permutation candidate(ranks);
        if (lca::is_tie_break_of(candidate, order)) result.push_back(candidate);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return result;
}

/// Average rank of x over every tie-break of the bucket order.
inline double brute_position(const lca::PartialRanking& order, int x) {
    double total = 0;
    const std::vector<lca::Permutation> breaks = all_tie_breaks(order);
    for (const lca::Permutation& p : breaks) total += p.rank_of(x);
    return total / static_cast<double>(breaks.size());
}

inline lca::Permutation random_permutation(int n, lca::Rng& rng) {
    std::vector<int> ranks(static_cast<size_t>(n));
    std::iota(ranks.begin(), ranks.end(), 1);
    rng.shuffle(ranks);
    return lca::Permutation(std::move(ranks));
}

inline lca::PartialRanking random_partial(int n, lca::Rng& rng, bool tail_allowed = false) {
    const lca::Permutation base = random_permutation(n, rng);
    const lca::Permutation by_rank = base.inverse();
    std::vector<int> bucket_of(static_cast<size_t>(n), 0);
    int bucket = 1;
    bucket_of[static_cast<size_t>(by_rank.rank_of(1)) - 1] = 1;
    for (int i = 2; i <= n; ++i) {
        if (rng.uniform01() < 0.5) ++bucket;
        bucket_of[static_cast<size_t>(by_rank.rank_of(i)) - 1] = bucket;
    }
    const bool tail = tail_allowed && bucket > 1 && rng.uniform01() < 0.5;
    return lca::PartialRanking(std::move(bucket_of), tail);
}

/// Minimum cumulative distance over all of S_n, by enumeration.
inline std::int64_t exhaustive_min_cumulative_halves(const lca::RankingSample& sample,
                                                     lca::Metric metric) {
    const int n = sample.n();
    std::vector<int> ranks(static_cast<size_t>(n));
    std::iota(ranks.begin(), ranks.end(), 1);
    std::int64_t best = -1;
    do {
        const lca::HalfInt d =
            lca::cumulative(sample, lca::Ranking(lca::Permutation(ranks)), metric);
        if (best < 0 || d.halves < best) best = d.halves;
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return best;
}

/// Minimum cumulative Kemeny distance over the 2^(n-1) bucketings of a
/// fixed permutation, by enumeration.
inline std::int64_t exhaustive_min_bucketing_halves(const lca::Permutation& sigma_hat,
                                                    const lca::RankingSample& sample) {
    const int n = sigma_hat.size();
    const lca::Permutation by_rank = sigma_hat.inverse();
    std::int64_t best = -1;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> bucket_of(static_cast<size_t>(n), 0);
        int bucket = 1;
        bucket_of[static_cast<size_t>(by_rank.rank_of(1)) - 1] = 1;
        for (int i = 2; i <= n; ++i) {
            if (mask & (1u << (i - 2))) ++bucket;
            bucket_of[static_cast<size_t>(by_rank.rank_of(i)) - 1] = bucket;
        }
        const lca::HalfInt d = lca::cumulative(
            sample, lca::Ranking(lca::PartialRanking(std::move(bucket_of))), lca::Metric::Kemeny);
        if (best < 0 || d.halves < best) best = d.halves;
    }
    return best;
}

}  // namespace oracles
