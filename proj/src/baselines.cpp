#include "lca/baselines.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>

#include "lca/lehmer.hpp"
#include "lca/rng.hpp"

namespace lca {

namespace detail {

std::vector<std::vector<std::int64_t>> above_counts(const RankingSample& sample) {
    const int n = sample.n();
    std::vector<std::vector<std::int64_t>> above(static_cast<size_t>(n),
                                                 std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (int k = 0; k < sample.size(); ++k) {
        const std::vector<int>* level;
        if (const auto* p = std::get_if<Permutation>(&sample.at(k)))
            level = &p->ranks();
        else
            level = &std::get<PartialRanking>(sample.at(k)).buckets();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                if ((*level)[u] < (*level)[v]) ++above[u][v];
                else if ((*level)[u] > (*level)[v]) ++above[v][u];
            }
    }
    return above;
}

std::vector<int> hungarian(const std::vector<std::vector<std::int64_t>>& cost) {
    const int n = static_cast<int>(cost.size());
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(static_cast<size_t>(n) + 1, 0), v(static_cast<size_t>(n) + 1, 0);
    std::vector<int> match(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(static_cast<size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            std::int64_t delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assignment(static_cast<size_t>(n), 0);
    for (int j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
    return assignment;
}

}  // namespace detail

namespace {

Metric objective_metric(const RankingSample& sample) {
    return sample.all_permutations() ? Metric::Kendall : Metric::Kemeny;
}

Permutation member_as_permutation(const Ranking& r) {
    if (const auto* p = std::get_if<Permutation>(&r)) return *p;
    return tie_break(std::get<PartialRanking>(r));
}

/// Majority relation with ties worth 1/2 to each side: u beats v iff the
/// weight of "u above v" strictly exceeds m/2.
struct Tournament {
    std::vector<std::vector<std::int64_t>> above;
    std::int64_t m;

    bool beats(int u, int v) const {
        const std::int64_t ties =
            m - above[u - 1][v - 1] - above[v - 1][u - 1];
        return 2 * above[u - 1][v - 1] + ties > m;
    }

    // exact half-half split
    bool tied(int u, int v) const {
        const std::int64_t ties = m - above[u - 1][v - 1] - above[v - 1][u - 1];
        return 2 * above[u - 1][v - 1] + ties == m;
    }
};

Permutation from_order(const std::vector<int>& order) {
    std::vector<int> ranks(order.size());
    for (size_t i = 0; i < order.size(); ++i) ranks[static_cast<size_t>(order[i]) - 1] =
        static_cast<int>(i) + 1;
    return Permutation(std::move(ranks));
}

void pivot_sort(const Tournament& t, std::vector<int>& items, Rng& rng,
                std::vector<int>& out) {
    if (items.empty()) return;
    const int pivot = items[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(items.size()) - 1))];
    std::vector<int> upper, lower;
    for (int u : items) {
        if (u == pivot) continue;
        // majority ties resolve by smaller element id
        const bool goes_up = t.beats(u, pivot) || (t.tied(u, pivot) && u < pivot);
        (goes_up ? upper : lower).push_back(u);
    }
    pivot_sort(t, upper, rng, out);
    out.push_back(pivot);
    pivot_sort(t, lower, rng, out);
}

template <typename RunFn>
Permutation best_of_restarts(const RankingSample& sample, std::uint64_t seed, int restarts,
                             RunFn&& run) {
    if (restarts < 1) restarts = 1;
    const Metric metric = objective_metric(sample);
    std::optional<Permutation> best;
    HalfInt best_objective;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed_split(seed, static_cast<std::uint64_t>(r)));
        Permutation candidate = run(rng);
        const HalfInt objective = cumulative(sample, Ranking(candidate), metric);
        if (!best || objective < best_objective) {
            best = std::move(candidate);
            best_objective = objective;
        }
    }
    return *best;
}

}  // namespace

Permutation pick_a_perm(const RankingSample& sample, PickStrategy strategy, std::uint64_t seed) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "pick_a_perm");
    if (strategy == PickStrategy::Random) {
        Rng rng(seed);
        return member_as_permutation(sample.at(rng.uniform_int(0, sample.size() - 1)));
    }
    const Metric metric = objective_metric(sample);
    std::optional<Permutation> best;
    HalfInt best_objective;
    for (int i = 0; i < sample.size(); ++i) {
        Permutation candidate = member_as_permutation(sample.at(i));
        const HalfInt objective = cumulative(sample, Ranking(candidate), metric);
        if (!best || objective < best_objective) {
            best = std::move(candidate);
            best_objective = objective;
        }
    }
    return *best;
}

Permutation fas_pivot(const RankingSample& sample, std::uint64_t seed, int restarts) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "fas_pivot");
    Tournament t{detail::above_counts(sample), sample.size()};
    const int n = sample.n();
    return best_of_restarts(sample, seed, restarts, [&](Rng& rng) {
        std::vector<int> items(static_cast<size_t>(n));
        std::iota(items.begin(), items.end(), 1);
        std::vector<int> order;
        order.reserve(static_cast<size_t>(n));
        pivot_sort(t, items, rng, order);
        return from_order(order);
    });
}

Permutation insertion_comp(const RankingSample& sample, std::uint64_t seed, int restarts) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "insertion_comp");
    Tournament t{detail::above_counts(sample), sample.size()};
    const int n = sample.n();
    return best_of_restarts(sample, seed, restarts, [&](Rng& rng) {
        std::vector<int> insertion(static_cast<size_t>(n));
        std::iota(insertion.begin(), insertion.end(), 1);
        rng.shuffle(insertion);
        std::vector<int> order;
        order.reserve(static_cast<size_t>(n));
        for (int e : insertion) {
            // topmost currently placed element that e majority-beats;
            // an element winning nothing goes last
            size_t pos = order.size();
            for (size_t i = 0; i < order.size(); ++i)
                if (t.beats(e, order[i])) {
                    pos = i;
                    break;
                }
            order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), e);
        }
        return from_order(order);
    });
}

Permutation borda(const RankingSample& sample) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "borda");
    const int n = sample.n();
    std::vector<std::int64_t> score_halves(static_cast<size_t>(n), 0);
    for (int k = 0; k < sample.size(); ++k) {
        const PartialRanking pr = as_partial(sample.at(k));
        for (int x = 1; x <= n; ++x) score_halves[x - 1] += position(pr, x).halves;
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (score_halves[a - 1] != score_halves[b - 1])
            return score_halves[a - 1] < score_halves[b - 1];
        return a < b;
    });
    return from_order(order);
}

Permutation spearman_optimal(const RankingSample& sample) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "spearman_optimal");
    const int n = sample.n();
    // cost(x, p) = sum over voters of |pos(x) - p|, in half-units
    std::vector<std::vector<std::int64_t>> cost(static_cast<size_t>(n),
                                                std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (int k = 0; k < sample.size(); ++k) {
        const PartialRanking pr = as_partial(sample.at(k));
        const std::vector<HalfInt> pos = positions(pr);
        for (int x = 0; x < n; ++x)
            for (int p = 0; p < n; ++p)
                cost[x][p] += std::abs(pos[x].halves - 2 * static_cast<std::int64_t>(p + 1));
    }
    const std::vector<int> assignment = detail::hungarian(cost);
    std::vector<int> ranks(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) ranks[x] = assignment[x] + 1;
    return Permutation(std::move(ranks));
}

}  // namespace lca
