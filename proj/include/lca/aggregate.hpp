#pragma once

#include <optional>
#include <vector>

#include "lca/core.hpp"
#include "lca/distance.hpp"
#include "lca/lehmer.hpp"
#include "lca/rational.hpp"

namespace lca {

enum class Rule { Mode, Median };

Rule rule_from_string(const std::string& name);

/// Accumulated votes for placing element x at each position y in [1..x].
/// Under the median rule each voter spreads total mass 1 over its feasible
/// interval; under the mode rule each feasible position gets a full vote.
struct VoteTable {
    int x = 0;
    std::vector<Rational> votes;  // votes[y-1] = V_x(y)

    Rational total() const;
};

struct AggregateResult {
    Permutation sigma_hat;
    LehmerCode c_hat;
    Rule rule;
    std::optional<PartialRanking> bucketed;
    HalfInt objective;  // cumulative Kendall (permutations) or Kemeny distance
};

/// Coordinate-wise mode/median of the Lehmer codes, decoded back into a
/// permutation. Ties under the mode rule resolve to the smallest code value;
/// the median is read off the cumulative vote in rank order (lowest position
/// whose cumulative share reaches one half).
AggregateResult aggregate_permutations(const RankingSample& sample, Rule rule, int threads = 1);

VoteTable vote_table(const RankingSample& sample, int x, Rule rule);
VoteTable vote_table(const std::vector<LehmerPair>& codes, int x, Rule rule);

/// Vote-based aggregation for bucket orders (permutations are treated as
/// all-singleton bucket orders, so mixed samples are fine). Output is a
/// permutation; feed it to a bucketizer to recover ties.
AggregateResult aggregate_partial(const RankingSample& sample, Rule rule, int threads = 1);

/// Left-to-right scan that merges each next element into the previous
/// bucket whenever doing so strictly lowers the cumulative Kemeny distance
/// on the prefix handled so far. Cost ties keep the finer partition.
PartialRanking greedy_bucketize(const Permutation& sigma_hat, const RankingSample& sample);

/// Kemeny-optimal bucketing consistent with sigma_hat, by dynamic
/// programming over contiguous rank blocks of the pairwise weight matrix.
PartialRanking optimal_bucketize(const Permutation& sigma_hat, const RankingSample& sample);

}  // namespace lca
