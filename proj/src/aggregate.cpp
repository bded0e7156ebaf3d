#include "lca/aggregate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "lca/parallel.hpp"

namespace lca {

Rule rule_from_string(const std::string& name) {
    if (name == "mode") return Rule::Mode;
    if (name == "median") return Rule::Median;
    raise(ErrorKind::ParseError, "unknown rule '" + name + "'");
}

Rational VoteTable::total() const {
    Rational sum = 0;
    for (const Rational& v : votes) sum += v;
    return sum;
}

namespace {

/// Smallest position y whose cumulative vote reaches half of the total
/// voter count, then converted to a code value c = x - y.
int median_code_from_votes(const VoteTable& table, int m) {
    Rational cum = 0;
    for (int y = 1; y <= table.x; ++y) {
        cum += table.votes[y - 1];
        if (2 * cum >= m) return table.x - y;
    }
    return 0;
}

/// Position with the largest vote; among ties the latest position wins,
/// i.e. the smallest code value.
int mode_code_from_votes(const VoteTable& table) {
    int best_y = 1;
    for (int y = 2; y <= table.x; ++y)
        if (table.votes[y - 1] >= table.votes[best_y - 1]) best_y = y;
    return table.x - best_y;
}

HalfInt result_objective(const RankingSample& sample, const Permutation& sigma_hat,
                         int threads) {
    const Metric metric = sample.all_permutations() ? Metric::Kendall : Metric::Kemeny;
    return cumulative(sample, Ranking(sigma_hat), metric, threads);
}

}  // namespace

AggregateResult aggregate_permutations(const RankingSample& sample, Rule rule, int threads) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "aggregate_permutations");
    if (!sample.all_permutations())
        raise(ErrorKind::MixedKinds, "aggregate_permutations needs permutations only");
    const int n = sample.n();
    const int m = sample.size();

    std::vector<LehmerPair> codes = encode_sample(sample, threads);

    LehmerCode c_hat;
    c_hat.c.assign(static_cast<size_t>(n), 0);
    parallel_for(n, threads, [&](int begin, int end) {
        std::vector<int> counts;
        for (int i = begin; i < end; ++i) {
            const int x = i + 1;
            counts.assign(static_cast<size_t>(x), 0);
            for (const LehmerPair& pair : codes) ++counts[pair.code.at(x)];
            if (rule == Rule::Mode) {
                int best = 0;
                for (int v = 1; v < x; ++v)
                    if (counts[v] > counts[best]) best = v;
                // ties keep the smaller code value
                for (int v = 0; v < best; ++v)
                    if (counts[v] == counts[best]) {
                        best = v;
                        break;
                    }
                c_hat.c[i] = best;
            } else {
                // cumulative votes in position order = codes from high to low
                int acc = 0;
                for (int v = x - 1; v >= 0; --v) {
                    acc += counts[v];
                    if (2 * acc >= m) {
                        c_hat.c[i] = v;
                        break;
                    }
                }
            }
        }
    });

    AggregateResult result{decode(c_hat), std::move(c_hat), rule, std::nullopt, HalfInt{}};
    result.objective = result_objective(sample, result.sigma_hat, threads);
    return result;
}

VoteTable vote_table(const std::vector<LehmerPair>& codes, int x, Rule rule) {
    VoteTable table;
    table.x = x;
    // difference array with one sentinel slot, then a prefix sum
    std::vector<Rational> diff(static_cast<size_t>(x) + 1, Rational(0));
    for (const LehmerPair& pair : codes) {
        const int c = pair.code.at(x);
        const int c_prime = pair.c_prime[x - 1];
        const int lo = x - c_prime;
        const int hi = x - c;
        const Rational value =
            rule == Rule::Mode ? Rational(1) : Rational(1, c_prime - c + 1);
        diff[lo - 1] += value;
        diff[hi] -= value;
    }
    table.votes.resize(static_cast<size_t>(x));
    Rational running = 0;
    for (int y = 1; y <= x; ++y) {
        running += diff[y - 1];
        table.votes[y - 1] = running;
    }
    return table;
}

VoteTable vote_table(const RankingSample& sample, int x, Rule rule) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "vote_table");
    if (x < 1 || x > sample.n())
        raise(ErrorKind::ElementOutOfRange, "element " + std::to_string(x));
    return vote_table(encode_sample(sample), x, rule);
}

AggregateResult aggregate_partial(const RankingSample& sample, Rule rule, int threads) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "aggregate_partial");
    const int n = sample.n();
    const int m = sample.size();

    std::vector<LehmerPair> codes = encode_sample(sample, threads);

    LehmerCode c_hat;
    c_hat.c.assign(static_cast<size_t>(n), 0);
    parallel_for(n, threads, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const int x = i + 1;
            const VoteTable table = vote_table(codes, x, rule);
            c_hat.c[i] = rule == Rule::Mode ? mode_code_from_votes(table)
                                            : median_code_from_votes(table, m);
        }
    });

    AggregateResult result{decode(c_hat), std::move(c_hat), rule, std::nullopt, HalfInt{}};
    result.objective = result_objective(sample, result.sigma_hat, threads);
    return result;
}

namespace {

/// Rank levels of every voter: bucket index for partial rankings, rank for
/// permutations. Comparing levels compares the voter's relative order.
std::vector<const std::vector<int>*> voter_levels(const RankingSample& sample) {
    std::vector<const std::vector<int>*> levels;
    levels.reserve(static_cast<size_t>(sample.size()));
    for (int k = 0; k < sample.size(); ++k) {
        if (const auto* p = std::get_if<Permutation>(&sample.at(k)))
            levels.push_back(&p->ranks());
        else
            levels.push_back(&std::get<PartialRanking>(sample.at(k)).buckets());
    }
    return levels;
}

}  // namespace

PartialRanking greedy_bucketize(const Permutation& sigma_hat, const RankingSample& sample) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "greedy_bucketize");
    const int n = sigma_hat.size();
    if (n != sample.n()) raise(ErrorKind::SizeMismatch, "greedy_bucketize");

    const auto levels = voter_levels(sample);
    const Permutation by_rank = sigma_hat.inverse();

    std::vector<int> bucket_of(static_cast<size_t>(n), 0);
    bucket_of[static_cast<size_t>(by_rank.rank_of(1) - 1)] = 1;
    int current_bucket = 1;
    std::vector<int> last_bucket_members{by_rank.rank_of(1)};

    for (int j = 1; j < n; ++j) {
        const int e = by_rank.rank_of(j + 1);
        // Only pairs between e and the trailing bucket differ across the two
        // candidate prefixes; earlier pairs cost the same either way.
        std::int64_t separate_halves = 0;  // e strictly after the bucket
        std::int64_t merged_halves = 0;    // e tied into the bucket
        for (const auto* level : levels) {
            const int le = (*level)[static_cast<size_t>(e - 1)];
            for (int y : last_bucket_members) {
                const int ly = (*level)[static_cast<size_t>(y - 1)];
                if (le < ly) separate_halves += 2;       // voter puts e above y
                else if (le == ly) separate_halves += 1;
                if (le != ly) merged_halves += 1;
            }
        }
        if (merged_halves < separate_halves) {
            last_bucket_members.push_back(e);
        } else {
            ++current_bucket;
            last_bucket_members.assign(1, e);
        }
        bucket_of[static_cast<size_t>(e - 1)] = current_bucket;
    }
    return PartialRanking(std::move(bucket_of));
}

PartialRanking optimal_bucketize(const Permutation& sigma_hat, const RankingSample& sample) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "optimal_bucketize");
    const int n = sigma_hat.size();
    if (n != sample.n()) raise(ErrorKind::SizeMismatch, "optimal_bucketize");
    const int m = sample.size();

    const auto levels = voter_levels(sample);
    const Permutation by_rank = sigma_hat.inverse();

    // above[p][q] = voters ranking the element at sigma_hat-rank p strictly
    // above the element at rank q.
    std::vector<std::vector<std::int64_t>> above(static_cast<size_t>(n),
                                                 std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (const auto* level : levels)
        for (int p = 0; p < n; ++p) {
            const int lp = (*level)[static_cast<size_t>(by_rank.rank_of(p + 1) - 1)];
            for (int q = p + 1; q < n; ++q) {
                const int lq = (*level)[static_cast<size_t>(by_rank.rank_of(q + 1) - 1)];
                if (lp < lq) ++above[p][q];
                else if (lp > lq) ++above[q][p];
            }
        }

    // Tying a pair (p < q) instead of keeping sigma_hat's strict order
    // changes the cost by (2*above[p][q] - m) half-units; bucketings are
    // contiguous rank blocks, so a prefix DP over block ends is exact.
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 2;
    std::vector<std::int64_t> best(static_cast<size_t>(n) + 1, inf);
    std::vector<int> cut(static_cast<size_t>(n) + 1, 0);
    best[0] = 0;
    for (int i = 1; i <= n; ++i) {
        std::int64_t block_delta = 0;
        // grow the final block [a+1..i] downward from a = i-1
        for (int a = i - 1; a >= 0; --a) {
            if (a < i - 1) {
                for (int q = a + 2; q <= i; ++q)
                    block_delta += 2 * above[a][q - 1] - m;
            }
            const std::int64_t candidate = best[a] + block_delta;
            if (candidate < best[i]) {
                best[i] = candidate;
                cut[i] = a;
            }
        }
    }

    std::vector<int> bucket_of(static_cast<size_t>(n), 0);
    std::vector<int> boundaries;
    for (int i = n; i > 0; i = cut[i]) boundaries.push_back(i);
    std::reverse(boundaries.begin(), boundaries.end());
    int bucket = 1;
    int start = 0;
    for (int end : boundaries) {
        for (int p = start; p < end; ++p)
            bucket_of[static_cast<size_t>(by_rank.rank_of(p + 1) - 1)] = bucket;
        ++bucket;
        start = end;
    }
    return PartialRanking(std::move(bucket_of));
}

}  // namespace lca
