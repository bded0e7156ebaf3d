#include "lca/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lca {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::DuplicateRank: return "DuplicateRank";
        case ErrorKind::RankOutOfRange: return "RankOutOfRange";
        case ErrorKind::EmptySubset: return "EmptySubset";
        case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
        case ErrorKind::NotSubdiagonal: return "NotSubdiagonal";
        case ErrorKind::InconsistentPair: return "InconsistentPair";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::MetricKindMismatch: return "MetricKindMismatch";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::MixedKinds: return "MixedKinds";
        case ErrorKind::InvalidPhi: return "InvalidPhi";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::RegimeViolated: return "RegimeViolated";
        case ErrorKind::ConditionViolated: return "ConditionViolated";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InconsistentN: return "InconsistentN";
        case ErrorKind::FormatError: return "FormatError";
        case ErrorKind::SelectionInfeasible: return "SelectionInfeasible";
    }
    return "UnknownError";
}

Permutation::Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    if (ranks_.empty()) raise(ErrorKind::EmptyInput, "permutation must have n >= 1");
    const int n = size();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int value : ranks_) {
        if (value < 1 || value > n)
            raise(ErrorKind::RankOutOfRange,
                  "rank " + std::to_string(value) + " outside [1," + std::to_string(n) + "]");
        if (seen[value - 1])
            raise(ErrorKind::DuplicateRank, "rank " + std::to_string(value) + " repeated");
        seen[value - 1] = 1;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 1) raise(ErrorKind::EmptyInput, "identity needs n >= 1");
    std::vector<int> ranks(static_cast<size_t>(n));
    std::iota(ranks.begin(), ranks.end(), 1);
    return Permutation(std::move(ranks), Unchecked{});
}

int Permutation::element_at(int i) const {
    if (i < 1 || i > size()) raise(ErrorKind::ElementOutOfRange, "rank " + std::to_string(i));
    for (int x = 1; x <= size(); ++x)
        if (ranks_[x - 1] == i) return x;
    return 0;  // unreachable for a valid permutation
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(ranks_.size());
    for (int x = 1; x <= size(); ++x) inv[ranks_[x - 1] - 1] = x;
    return Permutation(std::move(inv), Unchecked{});
}

Permutation inverse(const Permutation& sigma) { return sigma.inverse(); }

Permutation compose(const Permutation& pi, const Permutation& sigma) {
    if (pi.size() != sigma.size()) raise(ErrorKind::SizeMismatch, "compose");
    std::vector<int> out(sigma.ranks().size());
    for (int x = 1; x <= sigma.size(); ++x) out[x - 1] = pi.rank_of(sigma.rank_of(x));
    return Permutation(std::move(out), Permutation::Unchecked{});
}

PartialRanking::PartialRanking(std::vector<int> bucket_of, bool unrated_tail)
    : bucket_of_(std::move(bucket_of)), unrated_tail_(unrated_tail) {
    if (bucket_of_.empty()) raise(ErrorKind::EmptyInput, "partial ranking must have n >= 1");
    bucket_count_ = *std::max_element(bucket_of_.begin(), bucket_of_.end());
    if (*std::min_element(bucket_of_.begin(), bucket_of_.end()) < 1)
        raise(ErrorKind::RankOutOfRange, "bucket indices must be >= 1");
    bucket_sizes_.assign(static_cast<size_t>(bucket_count_), 0);
    for (int b : bucket_of_) ++bucket_sizes_[b - 1];
    for (int k = 0; k < bucket_count_; ++k)
        if (bucket_sizes_[k] == 0)
            raise(ErrorKind::RankOutOfRange, "empty bucket " + std::to_string(k + 1));
    bucket_low_.resize(static_cast<size_t>(bucket_count_));
    int low = 1;
    for (int k = 0; k < bucket_count_; ++k) {
        bucket_low_[k] = low;
        low += bucket_sizes_[k];
    }
}

PartialRanking PartialRanking::all_tied(int n) {
    if (n < 1) raise(ErrorKind::EmptyInput, "all_tied needs n >= 1");
    return PartialRanking(std::vector<int>(static_cast<size_t>(n), 1));
}

PartialRanking PartialRanking::from_permutation(const Permutation& sigma) {
    return PartialRanking(sigma.ranks());
}

std::vector<int> PartialRanking::bucket_members(int k) const {
    std::vector<int> members;
    for (int x = 1; x <= size(); ++x)
        if (bucket_of(x) == k) members.push_back(x);
    return members;
}

int ranking_size(const Ranking& r) {
    return std::visit([](const auto& v) { return v.size(); }, r);
}

RankingKind ranking_kind(const Ranking& r) {
    return std::holds_alternative<Permutation>(r) ? RankingKind::Full : RankingKind::Partial;
}

PartialRanking as_partial(const Ranking& r) {
    if (const auto* p = std::get_if<Permutation>(&r)) return PartialRanking::from_permutation(*p);
    return std::get<PartialRanking>(r);
}

Ranking validate(const std::vector<int>& raw, RankingKind kind) {
    if (raw.empty()) raise(ErrorKind::EmptyInput, "ranking must have n >= 1");
    if (kind == RankingKind::Full) return Permutation(raw);

    // Compress arbitrary bucket labels to consecutive 1..t, preserving order.
    std::map<int, int> relabel;
    for (int label : raw) relabel[label] = 0;
    int next = 1;
    for (auto& [label, idx] : relabel) idx = next++;
    std::vector<int> compressed(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) compressed[i] = relabel[raw[i]];
    return PartialRanking(std::move(compressed));
}

namespace {

std::vector<int> checked_subset(std::span<const int> subset, int n) {
    if (subset.empty()) raise(ErrorKind::EmptySubset, "projection subset is empty");
    std::vector<int> ids(subset.begin(), subset.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int x : ids)
        if (x < 1 || x > n)
            raise(ErrorKind::ElementOutOfRange, "element " + std::to_string(x));
    return ids;
}

}  // namespace

Projected<Permutation> project(const Permutation& sigma, std::span<const int> subset) {
    std::vector<int> ids = checked_subset(subset, sigma.size());
    const int q = static_cast<int>(ids.size());
    // Rank within the subset = number of subset members ranked at or above.
    std::vector<int> order(ids);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sigma.rank_of(a) < sigma.rank_of(b); });
    std::vector<int> ranks(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) {
        int original = order[i];
        int relabeled =
            static_cast<int>(std::lower_bound(ids.begin(), ids.end(), original) - ids.begin()) + 1;
        ranks[relabeled - 1] = i + 1;
    }
    return {Permutation(std::move(ranks)), std::move(ids)};
}

Projected<PartialRanking> project(const PartialRanking& sigma, std::span<const int> subset) {
    std::vector<int> ids = checked_subset(subset, sigma.size());
    // Buckets intersecting the subset keep their relative order; empty ones drop out.
    std::vector<int> bucket_new(static_cast<size_t>(sigma.bucket_count()), 0);
    for (int x : ids) bucket_new[sigma.bucket_of(x) - 1] = 1;
    int next = 0;
    for (int k = 0; k < sigma.bucket_count(); ++k)
        if (bucket_new[k]) bucket_new[k] = ++next;
    std::vector<int> buckets(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) buckets[i] = bucket_new[sigma.bucket_of(ids[i]) - 1];
    bool tail = sigma.unrated_tail() && bucket_new[sigma.bucket_count() - 1] == next &&
                bucket_new[sigma.bucket_count() - 1] != 0;
    return {PartialRanking(std::move(buckets), tail), std::move(ids)};
}

bool is_tie_break_of(const Permutation& sigma, const PartialRanking& order) {
    if (sigma.size() != order.size()) raise(ErrorKind::SizeMismatch, "is_tie_break_of");
    for (int x = 1; x <= sigma.size(); ++x)
        for (int y = x + 1; y <= sigma.size(); ++y) {
            if (order.bucket_of(x) < order.bucket_of(y) && sigma.rank_of(x) > sigma.rank_of(y))
                return false;
            if (order.bucket_of(x) > order.bucket_of(y) && sigma.rank_of(x) < sigma.rank_of(y))
                return false;
        }
    return true;
}

RankingSample::RankingSample(std::vector<Ranking> rankings, SampleMeta m)
    : meta(std::move(m)) {
    for (auto& r : rankings) add(std::move(r));
}

void RankingSample::add(Ranking r) {
    const int rn = ranking_size(r);
    if (rankings_.empty())
        n_ = rn;
    else if (rn != n_)
        raise(ErrorKind::SizeMismatch,
              "ranking over " + std::to_string(rn) + " elements added to sample over " +
                  std::to_string(n_));
    rankings_.push_back(std::move(r));
}

bool RankingSample::all_permutations() const {
    return std::all_of(rankings_.begin(), rankings_.end(), [](const Ranking& r) {
        return ranking_kind(r) == RankingKind::Full;
    });
}

bool RankingSample::all_partial() const {
    return std::all_of(rankings_.begin(), rankings_.end(), [](const Ranking& r) {
        return ranking_kind(r) == RankingKind::Partial;
    });
}

}  // namespace lca
