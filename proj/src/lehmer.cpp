#include "lca/lehmer.hpp"

#include <numeric>
#include <string>

#include "lca/fenwick.hpp"
#include "lca/parallel.hpp"

namespace lca {

void check_subdiagonal(const LehmerCode& code) {
    for (int x = 1; x <= code.size(); ++x)
        if (code.at(x) < 0 || code.at(x) > x - 1)
            raise(ErrorKind::NotSubdiagonal,
                  "c(" + std::to_string(x) + ") = " + std::to_string(code.at(x)));
}

LehmerCode encode(const Permutation& sigma) {
    const int n = sigma.size();
    FenwickTree ranks_seen(n);
    LehmerCode code;
    code.c.resize(static_cast<size_t>(n));
    for (int x = 1; x <= n; ++x) {
        const int r = sigma.rank_of(x);
        // Smaller-id elements ranked below x = inserted so far minus those at or above.
        code.c[x - 1] = (x - 1) - ranks_seen.prefix(r);
        ranks_seen.add(r, 1);
    }
    return code;
}

Permutation decode(const LehmerCode& code) {
    check_subdiagonal(code);
    const int n = code.size();
    FenwickTree free_slots(n);
    for (int r = 1; r <= n; ++r) free_slots.add(r, 1);
    std::vector<int> ranks(static_cast<size_t>(n));
    // Among elements 1..x the element x sits at position x - c(x); the
    // elements with larger id are already pinned, so that position is the
    // (x - c(x))-th still-free rank.
    for (int x = n; x >= 1; --x) {
        const int r = free_slots.find_kth(x - code.at(x));
        ranks[x - 1] = r;
        free_slots.add(r, -1);
    }
    return Permutation(std::move(ranks));
}

Permutation tie_break(const PartialRanking& sigma) {
    const int n = sigma.size();
    std::vector<int> next_rank(static_cast<size_t>(sigma.bucket_count()));
    for (int k = 1; k <= sigma.bucket_count(); ++k) next_rank[k - 1] = sigma.bucket_low(k);
    std::vector<int> ranks(static_cast<size_t>(n));
    for (int x = 1; x <= n; ++x) ranks[x - 1] = next_rank[sigma.bucket_of(x) - 1]++;
    return Permutation(std::move(ranks));
}

LehmerPair encode_partial(const PartialRanking& sigma) {
    const int n = sigma.size();
    LehmerPair pair;
    pair.in_count.resize(static_cast<size_t>(n));
    std::vector<int> bucket_fill(static_cast<size_t>(sigma.bucket_count()), 0);
    for (int x = 1; x <= n; ++x) pair.in_count[x - 1] = ++bucket_fill[sigma.bucket_of(x) - 1];
    pair.code = encode(tie_break(sigma));
    pair.c_prime.resize(static_cast<size_t>(n));
    for (int x = 1; x <= n; ++x) pair.c_prime[x - 1] = pair.code.at(x) + pair.in_count[x - 1] - 1;
    return pair;
}

PartialRanking decode_partial(const LehmerPair& pair) {
    const int n = pair.size();
    check_subdiagonal(pair.code);
    if (static_cast<int>(pair.c_prime.size()) != n)
        raise(ErrorKind::SizeMismatch, "c and c_prime lengths differ");
    for (int x = 1; x <= n; ++x) {
        const int in = pair.c_prime[x - 1] - pair.code.at(x) + 1;
        if (pair.c_prime[x - 1] < pair.code.at(x) || pair.c_prime[x - 1] > x - 1 || in > x)
            raise(ErrorKind::InconsistentPair,
                  "c'(" + std::to_string(x) + ") = " + std::to_string(pair.c_prime[x - 1]));
        if (!pair.in_count.empty() && pair.in_count[x - 1] != in)
            raise(ErrorKind::InconsistentPair, "in_count contradicts c' - c + 1");
    }

    // Under the id-ascending tie-break the first member of each bucket is the
    // one with smallest id, and only that member has in = 1. Walk the
    // tie-broken permutation by rank and open a bucket at each such element.
    const Permutation sigma_prime = decode(pair.code);
    const Permutation by_rank = sigma_prime.inverse();
    std::vector<int> buckets(static_cast<size_t>(n));
    int current = 0;
    for (int i = 1; i <= n; ++i) {
        const int e = by_rank.rank_of(i);
        const int in = pair.c_prime[e - 1] - pair.code.at(e) + 1;
        if (in == 1) ++current;
        if (current == 0) raise(ErrorKind::InconsistentPair, "first element must open a bucket");
        buckets[e - 1] = current;
    }
    PartialRanking result(std::move(buckets));

    const LehmerPair roundtrip = encode_partial(result);
    if (roundtrip.code != pair.code || roundtrip.c_prime != pair.c_prime)
        raise(ErrorKind::InconsistentPair, "no bucket order realizes this pair");
    return result;
}

std::int64_t kendall_from_code(const LehmerCode& code) {
    check_subdiagonal(code);
    return std::accumulate(code.c.begin(), code.c.end(), std::int64_t{0});
}

std::vector<LehmerPair> encode_sample(const RankingSample& sample, int threads) {
    if (sample.empty()) raise(ErrorKind::EmptySample, "nothing to encode");
    std::vector<LehmerPair> out(static_cast<size_t>(sample.size()));
    parallel_for(sample.size(), threads, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            if (const auto* p = std::get_if<Permutation>(&sample.at(i))) {
                LehmerPair pair;
                pair.code = encode(*p);
                pair.c_prime = pair.code.c;
                pair.in_count.assign(pair.code.c.size(), 1);
                out[static_cast<size_t>(i)] = std::move(pair);
            } else {
                out[static_cast<size_t>(i)] = encode_partial(std::get<PartialRanking>(sample.at(i)));
            }
        }
    });
    return out;
}

}  // namespace lca
