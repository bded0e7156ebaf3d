#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lca/core.hpp"
#include "lca/distance.hpp"
#include "lca/rational.hpp"
#include "lca/rng.hpp"

namespace lca {

/// phi_{s:t} = sum_{k=s}^{t} phi^k, exact in the snapped rational phi.
class PhiSeries {
public:
    explicit PhiSeries(Rational phi) : phi_(std::move(phi)) {}

    const Rational& phi() const { return phi_; }
    Rational range(std::int64_t s, std::int64_t t) const;

    /// q = phi_{1:n-1} / (1 + phi_{3:n}).
    Rational mode_ratio_bound(int n) const;

private:
    Rational phi_;
};

struct MallowsParams {
    Permutation sigma0;
    double phi;
    std::optional<double> lambda;

    MallowsParams(Permutation centroid, double phi_value,
                  std::optional<double> lambda_value = std::nullopt);

    static MallowsParams from_lambda(Permutation centroid, double lambda_value);
};

struct GmmParams {
    PartialRanking sigma0;
    double phi;

    GmmParams(PartialRanking centroid, double phi_value);
};

/// One exact draw: independent truncated-geometric code coordinates
/// relative to the centroid, decoded and composed with it.
Permutation sample_mallows(const MallowsParams& params, Rng& rng);
Permutation sample_mallows(const MallowsParams& params, std::uint64_t seed);

std::vector<Permutation> enumerate_permutations(int n);
std::vector<PartialRanking> enumerate_weak_orders(int n);

/// Exhaustive distribution over S_n with exact rational probabilities
/// (phi is snapped to a rational with denominator <= 10^6). n <= 8.
struct MallowsPmf {
    std::vector<std::pair<Permutation, Rational>> table;
    Rational normalizer;

    /// P[sigma(u) = j] for j = 1..n.
    std::vector<Rational> rank_marginal(int u) const;
};

MallowsPmf exact_mallows_pmf(const MallowsParams& params);

struct MetropolisConfig {
    int burn_in = -1;   // negative = pick from n
    int thinning = -1;  // negative = pick from n
};

/// Draws bucket orders with P proportional to phi^(Kemeny distance to the
/// centroid). Exact enumeration for n <= 7; a seeded Metropolis chain over
/// weak orders (adjacent swap / merge / split moves) beyond that.
class GmmSampler {
public:
    GmmSampler(GmmParams params, std::uint64_t seed, MetropolisConfig config = {});

    PartialRanking sample();
    std::vector<PartialRanking> draw(int count);

    bool exact() const { return exact_; }

    /// Stationary weights over enumerate_weak_orders(n); exact path only.
    const std::vector<double>& weights() const;

private:
    PartialRanking metropolis_step_block();
    void metropolis_steps(int count);

    GmmParams params_;
    Rng rng_;
    bool exact_;
    // exact path
    std::vector<PartialRanking> support_;
    std::vector<double> weights_;
    std::vector<double> cdf_;
    // chain path
    std::vector<std::vector<int>> state_;
    std::int64_t state_cost_halves_ = 0;
    int burn_in_ = 0;
    int thinning_ = 0;
    bool warmed_up_ = false;
};

PartialRanking sample_gmm_partial(const GmmParams& params, std::uint64_t seed,
                                  MetropolisConfig config = {});

struct RatioEntry {
    int j_near;       // rank closer to the centroid rank
    int j_far;        // rank one step further away
    Rational ratio;   // P[rank = j_far] / P[rank = j_near]
    bool within;
};

struct PositionRatioReport {
    bool regime_ok = false;        // phi + phi^2 < 1 + phi^n
    bool bounds_hold = false;
    bool pass = false;             // regime_ok && bounds_hold
    bool any_ratio_above_one = false;
    Rational lower_bound;          // 0 for proper subsets (upper bound only)
    Rational upper_bound;
    std::vector<RatioEntry> entries;
};

/// Enumerates the Mallows distribution and checks the step ratios of the
/// rank of u within A against their closed-form envelope. n <= 8.
PositionRatioReport check_lemma_position_ratios(const MallowsParams& params, int u,
                                                const std::vector<int>& subset);

struct TailBoundReport {
    Rational upper_tail;  // P[rank below the centroid rank]
    Rational lower_tail;  // P[rank above the centroid rank]
    Rational upper_bound;
    Rational lower_bound;
    bool upper_ok = false;
    bool lower_ok = false;
    bool upper_tight = false;
    bool lower_tight = false;
    bool pass = false;
};

/// Exact tail probabilities of the projected rank versus their geometric
/// series bounds (both tails also strictly below phi). n <= 8.
TailBoundReport check_lemma_tail_bounds(const MallowsParams& params, int u,
                                        const std::vector<int>& subset);

struct VoteBoundReport {
    bool regime_ok = false;     // phi + sqrt(phi) < 1
    bool bound_holds = false;   // expectation >= 1 - sqrt(phi)/2 - phi/2
    bool pass = false;          // regime_ok && bound_holds
    double expectation = 0.0;
    double bound = 0.0;
};

/// Expected median-rule vote mass that a single draw places at or above the
/// right edge of u's centroid bucket within A, compared exactly (arithmetic
/// in Q[sqrt(phi)]) against its lower bound. n <= 6.
VoteBoundReport check_partial_vote_bound(const GmmParams& params, int u,
                                         const std::vector<int>& subset);

enum class BoundTheorem { Mode, Median, PartialMedian };

/// Sample count sufficient for centroid recovery with failure probability
/// at most delta. Throws RegimeViolated outside the parameter regime.
std::int64_t sample_complexity_bound(BoundTheorem theorem, int n, double phi, double delta);

}  // namespace lca
