#pragma once

#include <cstdint>
#include <vector>

#include "lca/core.hpp"
#include "lca/distance.hpp"

namespace lca {

enum class PickStrategy { Best, Random };

/// Returns a member of the sample (partial members are tie-broken first).
/// `Best` picks the member with the smallest cumulative distance, ties going
/// to the lowest index; `Random` picks uniformly with the given seed.
Permutation pick_a_perm(const RankingSample& sample, PickStrategy strategy,
                        std::uint64_t seed = 0);

/// Quicksort-style recursion on the majority tournament with uniformly
/// random pivots; runs `restarts` times and keeps the best objective.
Permutation fas_pivot(const RankingSample& sample, std::uint64_t seed, int restarts = 5);

/// Inserts elements in a random order; each element lands at the topmost
/// position currently held by an element it majority-beats, or last if it
/// beats none. Best of `restarts` runs.
Permutation insertion_comp(const RankingSample& sample, std::uint64_t seed, int restarts = 5);

/// Sorts elements by mean position, ties by smaller element id.
Permutation borda(const RankingSample& sample);

/// Exact minimizer of the cumulative Spearman footrule distance via a
/// minimum-cost assignment between elements and positions.
Permutation spearman_optimal(const RankingSample& sample);

namespace detail {

/// above[u-1][v-1] = number of voters ranking u strictly above v.
std::vector<std::vector<std::int64_t>> above_counts(const RankingSample& sample);

/// Minimum-cost perfect matching on a square cost matrix; returns the
/// column assigned to each row.
std::vector<int> hungarian(const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace detail

}  // namespace lca
