#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lca/error.hpp"

namespace lca {

/// A full ranking of [n]: sigma(x) is the rank (position) of element x,
/// with rank 1 the highest. Immutable after construction.
class Permutation {
public:
    explicit Permutation(std::vector<int> ranks);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(ranks_.size()); }

    /// Rank of element x, 1-based.
    int rank_of(int x) const { return ranks_[x - 1]; }

    /// Element holding rank i, 1-based.
    int element_at(int i) const;

    const std::vector<int>& ranks() const { return ranks_; }

    Permutation inverse() const;

    bool operator==(const Permutation& other) const { return ranks_ == other.ranks_; }
    bool operator<(const Permutation& other) const { return ranks_ < other.ranks_; }

private:
    struct Unchecked {};
    Permutation(std::vector<int> ranks, Unchecked) : ranks_(std::move(ranks)) {}

    std::vector<int> ranks_;

    friend Permutation compose(const Permutation&, const Permutation&);
};

/// Ranking with ties (bucket order): bucket_of(x) is the index of the
/// bucket holding x, buckets numbered 1..t from highest to lowest rank.
/// When `unrated_tail` is set, bucket t collects the unrated elements.
class PartialRanking {
public:
    explicit PartialRanking(std::vector<int> bucket_of, bool unrated_tail = false);

    /// All elements tied in a single bucket.
    static PartialRanking all_tied(int n);

    /// Singleton buckets matching the given permutation.
    static PartialRanking from_permutation(const Permutation& sigma);

    int size() const { return static_cast<int>(bucket_of_.size()); }
    int bucket_count() const { return bucket_count_; }
    bool unrated_tail() const { return unrated_tail_; }

    /// Bucket index of element x, 1-based.
    int bucket_of(int x) const { return bucket_of_[x - 1]; }

    const std::vector<int>& buckets() const { return bucket_of_; }
    const std::vector<int>& bucket_sizes() const { return bucket_sizes_; }

    /// Highest rank occupied by bucket k (l_k).
    int bucket_low(int k) const { return bucket_low_[k - 1]; }
    /// Lowest rank occupied by bucket k (r_k).
    int bucket_high(int k) const { return bucket_low_[k - 1] + bucket_sizes_[k - 1] - 1; }

    bool is_rated(int x) const { return !unrated_tail_ || bucket_of(x) != bucket_count_; }

    /// Elements of bucket k in ascending element id.
    std::vector<int> bucket_members(int k) const;

    bool operator==(const PartialRanking& other) const {
        return bucket_of_ == other.bucket_of_ && unrated_tail_ == other.unrated_tail_;
    }
    bool operator<(const PartialRanking& other) const {
        if (bucket_of_ != other.bucket_of_) return bucket_of_ < other.bucket_of_;
        return unrated_tail_ < other.unrated_tail_;
    }

private:
    std::vector<int> bucket_of_;
    std::vector<int> bucket_sizes_;
    std::vector<int> bucket_low_;
    int bucket_count_ = 0;
    bool unrated_tail_ = false;
};

using Ranking = std::variant<Permutation, PartialRanking>;

enum class RankingKind { Full, Partial };

int ranking_size(const Ranking& r);
RankingKind ranking_kind(const Ranking& r);

/// View any ranking as a bucket order (permutations become singleton buckets).
PartialRanking as_partial(const Ranking& r);

/// Validates a raw integer vector as a full or partial ranking. Partial
/// inputs may use arbitrary integer bucket labels; they are compressed to
/// consecutive 1..t preserving order.
Ranking validate(const std::vector<int>& raw, RankingKind kind);

/// Relabeled ranking over a subset plus the map back to original ids:
/// element i of the projection corresponds to id_map[i-1] in the source.
template <typename R>
struct Projected {
    R ranking;
    std::vector<int> id_map;
};

Projected<Permutation> project(const Permutation& sigma, std::span<const int> subset);
Projected<PartialRanking> project(const PartialRanking& sigma, std::span<const int> subset);

Permutation inverse(const Permutation& sigma);

/// rho(x) = pi(sigma(x)).
Permutation compose(const Permutation& pi, const Permutation& sigma);

/// True iff sigma is obtainable from the bucket order by breaking ties,
/// i.e. sigma never reorders elements across buckets.
bool is_tie_break_of(const Permutation& sigma, const PartialRanking& order);

struct SampleMeta {
    std::string source;
    std::uint64_t seed = 0;
    std::string model;
};

/// An ordered collection of rankings over a common ground set.
class RankingSample {
public:
    RankingSample() = default;
    explicit RankingSample(std::vector<Ranking> rankings, SampleMeta meta = {});

    void add(Ranking r);

    int size() const { return static_cast<int>(rankings_.size()); }
    int n() const { return n_; }
    bool empty() const { return rankings_.empty(); }

    const Ranking& at(int i) const { return rankings_[i]; }
    const std::vector<Ranking>& rankings() const { return rankings_; }

    bool all_permutations() const;
    bool all_partial() const;

    SampleMeta meta;

private:
    std::vector<Ranking> rankings_;
    int n_ = 0;
};

}  // namespace lca
