#include "lca/distance.hpp"

#include <algorithm>
#include <cstdlib>

#include "lca/fenwick.hpp"
#include "lca/parallel.hpp"

namespace lca {

std::string HalfInt::str() const {
    std::string s = std::to_string(halves / 2);
    if (halves % 2 != 0) {
        if (halves < 0 && halves / 2 == 0) s = "-" + s;
        s += ".5";
    }
    return s;
}

HalfInt abs_diff(HalfInt a, HalfInt b) { return {std::abs(a.halves - b.halves)}; }

Metric metric_from_string(const std::string& name) {
    if (name == "kendall") return Metric::Kendall;
    if (name == "kemeny") return Metric::Kemeny;
    if (name == "kemeny-unrated" || name == "kemeny_unrated") return Metric::KemenyUnrated;
    if (name == "footrule") return Metric::Footrule;
    raise(ErrorKind::ParseError, "unknown metric '" + name + "'");
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::Kendall: return "kendall";
        case Metric::Kemeny: return "kemeny";
        case Metric::KemenyUnrated: return "kemeny-unrated";
        case Metric::Footrule: return "footrule";
    }
    return "?";
}

std::int64_t kendall_tau(const Permutation& pi, const Permutation& sigma) {
    const int n = pi.size();
    if (n != sigma.size()) raise(ErrorKind::SizeMismatch, "kendall_tau");
    // Inversions of sigma read in pi's rank order.
    std::vector<int> by_pi_rank(static_cast<size_t>(n));
    for (int x = 1; x <= n; ++x) by_pi_rank[pi.rank_of(x) - 1] = sigma.rank_of(x);
    FenwickTree seen(n);
    std::int64_t inversions = 0;
    for (int i = n - 1; i >= 0; --i) {
        inversions += seen.prefix(by_pi_rank[i] - 1);
        seen.add(by_pi_rank[i], 1);
    }
    return inversions;
}

namespace {

// 0 = strictly above, 1 = tied, 2 = strictly below.
inline int relation(int level_x, int level_y) {
    if (level_x < level_y) return 0;
    if (level_x == level_y) return 1;
    return 2;
}

}  // namespace

HalfInt kemeny(const PartialRanking& pi, const PartialRanking& sigma) {
    const int n = pi.size();
    if (n != sigma.size()) raise(ErrorKind::SizeMismatch, "kemeny");
    std::int64_t halves = 0;
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) {
            const int a = relation(pi.bucket_of(x), pi.bucket_of(y));
            const int b = relation(sigma.bucket_of(x), sigma.bucket_of(y));
            if (a != 1 && b != 1 && a != b) halves += 2;
            else if ((a == 1) != (b == 1)) halves += 1;
        }
    return HalfInt::from_halves(halves);
}

HalfInt kemeny_unrated(const PartialRanking& pi, const PartialRanking& sigma) {
    const int n = pi.size();
    if (n != sigma.size()) raise(ErrorKind::SizeMismatch, "kemeny_unrated");
    std::int64_t halves = 0;
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) {
            const int a = relation(pi.bucket_of(x), pi.bucket_of(y));
            const int b = relation(sigma.bucket_of(x), sigma.bucket_of(y));
            if (a != 1 && b != 1 && a != b) {
                halves += 2;
            } else if (a == 1 && b != 1) {
                if (pi.is_rated(x) && pi.is_rated(y)) halves += 1;
            } else if (b == 1 && a != 1) {
                if (sigma.is_rated(x) && sigma.is_rated(y)) halves += 1;
            }
        }
    return HalfInt::from_halves(halves);
}

HalfInt position(const PartialRanking& sigma, int x) {
    if (x < 1 || x > sigma.size())
        raise(ErrorKind::ElementOutOfRange, "element " + std::to_string(x));
    const int k = sigma.bucket_of(x);
    // elements ranked strictly above, plus the centre of the bucket
    return HalfInt::from_halves(2 * static_cast<std::int64_t>(sigma.bucket_low(k) - 1) +
                                sigma.bucket_sizes()[k - 1] + 1);
}

std::vector<HalfInt> positions(const PartialRanking& sigma) {
    std::vector<HalfInt> pos(static_cast<size_t>(sigma.size()));
    for (int x = 1; x <= sigma.size(); ++x) pos[x - 1] = position(sigma, x);
    return pos;
}

HalfInt spearman_footrule(const PartialRanking& pi, const PartialRanking& sigma) {
    const int n = pi.size();
    if (n != sigma.size()) raise(ErrorKind::SizeMismatch, "spearman_footrule");
    const std::vector<HalfInt> a = positions(pi);
    const std::vector<HalfInt> b = positions(sigma);
    HalfInt total;
    for (int i = 0; i < n; ++i) total += abs_diff(a[i], b[i]);
    return total;
}

HalfInt spearman_footrule(const Permutation& pi, const Permutation& sigma) {
    const int n = pi.size();
    if (n != sigma.size()) raise(ErrorKind::SizeMismatch, "spearman_footrule");
    std::int64_t total = 0;
    for (int x = 1; x <= n; ++x) total += std::abs(pi.rank_of(x) - sigma.rank_of(x));
    return HalfInt::whole(total);
}

HalfInt pair_distance(const Ranking& a, const Ranking& b, Metric metric) {
    switch (metric) {
        case Metric::Kendall: {
            const auto* pa = std::get_if<Permutation>(&a);
            const auto* pb = std::get_if<Permutation>(&b);
            if (pa == nullptr || pb == nullptr)
                raise(ErrorKind::MetricKindMismatch, "kendall needs two permutations");
            return HalfInt::whole(kendall_tau(*pa, *pb));
        }
        case Metric::Kemeny:
            return kemeny(as_partial(a), as_partial(b));
        case Metric::KemenyUnrated:
            return kemeny_unrated(as_partial(a), as_partial(b));
        case Metric::Footrule: {
            const auto* pa = std::get_if<Permutation>(&a);
            const auto* pb = std::get_if<Permutation>(&b);
            if (pa != nullptr && pb != nullptr) return spearman_footrule(*pa, *pb);
            return spearman_footrule(as_partial(a), as_partial(b));
        }
    }
    raise(ErrorKind::MetricKindMismatch, "unknown metric");
}

HalfInt cumulative(const RankingSample& sample, const Ranking& sigma, Metric metric,
                   int threads) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "cumulative over empty sample");
    if (sample.n() != ranking_size(sigma)) raise(ErrorKind::SizeMismatch, "cumulative");
    // Kind mismatches must surface before any worker thread starts.
    if (metric == Metric::Kendall &&
        (!sample.all_permutations() || ranking_kind(sigma) != RankingKind::Full))
        raise(ErrorKind::MetricKindMismatch, "kendall needs permutations only");
    const int m = sample.size();
    std::vector<std::int64_t> partial(static_cast<size_t>(std::max(threads, 1)), 0);
    const int workers = std::max(threads, 1);
    const int chunk = (m + workers - 1) / workers;
    parallel_for(workers, workers, [&](int begin, int end) {
        for (int w = begin; w < end; ++w) {
            std::int64_t local = 0;
            const int lo = w * chunk;
            const int hi = std::min(m, lo + chunk);
            for (int i = lo; i < hi; ++i)
                local += pair_distance(sample.at(i), sigma, metric).halves;
            partial[static_cast<size_t>(w)] = local;
        }
    });
    std::int64_t halves = 0;
    for (std::int64_t p : partial) halves += p;
    return HalfInt::from_halves(halves);
}

double average_distance(const RankingSample& sample, const Ranking& sigma, Metric metric,
                        int threads) {
    return cumulative(sample, sigma, metric, threads).to_double() / sample.size();
}

}  // namespace lca
