#include "lca/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lca/lehmer.hpp"

namespace lca {

Rational PhiSeries::range(std::int64_t s, std::int64_t t) const {
    if (t < s) return 0;
    Rational term = rational_pow(phi_, s);
    Rational sum = 0;
    for (std::int64_t k = s; k <= t; ++k) {
        sum += term;
        term *= phi_;
    }
    return sum;
}

Rational PhiSeries::mode_ratio_bound(int n) const { return range(1, n - 1) / (1 + range(3, n)); }

MallowsParams::MallowsParams(Permutation centroid, double phi_value,
                             std::optional<double> lambda_value)
    : sigma0(std::move(centroid)), phi(phi_value), lambda(lambda_value) {
    if (!(phi > 0.0) || phi > 1.0)
        raise(ErrorKind::InvalidPhi, "phi must lie in (0, 1], got " + std::to_string(phi));
    if (lambda) {
        if (*lambda < 0.0) raise(ErrorKind::InvalidPhi, "lambda must be >= 0");
        if (std::abs(phi - std::exp(-*lambda)) > 1e-9)
            raise(ErrorKind::InvalidPhi, "phi and lambda disagree");
    }
}

MallowsParams MallowsParams::from_lambda(Permutation centroid, double lambda_value) {
    return MallowsParams(std::move(centroid), std::exp(-lambda_value), lambda_value);
}

GmmParams::GmmParams(PartialRanking centroid, double phi_value)
    : sigma0(std::move(centroid)), phi(phi_value) {
    if (!(phi > 0.0) || !(phi < 1.0))
        raise(ErrorKind::InvalidPhi, "phi must lie in (0, 1), got " + std::to_string(phi));
}

Permutation sample_mallows(const MallowsParams& params, Rng& rng) {
    const int n = params.sigma0.size();
    const double phi = params.phi;
    LehmerCode code;
    code.c.assign(static_cast<size_t>(n), 0);
    if (phi >= 1.0) {
        for (int j = 2; j <= n; ++j) code.c[j - 1] = rng.uniform_int(0, j - 1);
    } else {
        const double log_phi = std::log(phi);
        double phi_pow = phi;  // phi^j
        for (int j = 2; j <= n; ++j) {
            phi_pow *= phi;
            const double u = rng.uniform01();
            const double rhs = 1.0 - u * (1.0 - phi_pow);
            int k = static_cast<int>(std::floor(std::log(rhs) / log_phi));
            k = std::clamp(k, 0, j - 1);
            code.c[j - 1] = k;
        }
    }
    return compose(decode(code), params.sigma0);
}

Permutation sample_mallows(const MallowsParams& params, std::uint64_t seed) {
    Rng rng(seed);
    return sample_mallows(params, rng);
}

std::vector<Permutation> enumerate_permutations(int n) {
    std::vector<int> ranks(static_cast<size_t>(n));
    std::iota(ranks.begin(), ranks.end(), 1);
    std::vector<Permutation> all;
    do {
        all.emplace_back(ranks);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return all;
}

namespace {

void weak_orders_rec(int n, unsigned remaining, int depth, std::vector<int>& bucket_of,
                     std::vector<PartialRanking>& out) {
    if (remaining == 0) {
        out.emplace_back(bucket_of);
        return;
    }
    // first bucket of the remainder = any nonempty subset
    for (unsigned sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
        for (int x = 0; x < n; ++x)
            if (sub & (1u << x)) bucket_of[static_cast<size_t>(x)] = depth;
        weak_orders_rec(n, remaining & ~sub, depth + 1, bucket_of, out);
    }
}

}  // namespace

std::vector<PartialRanking> enumerate_weak_orders(int n) {
    if (n < 1) raise(ErrorKind::EmptyInput, "enumerate_weak_orders");
    if (n > 10) raise(ErrorKind::TooLarge, "weak-order enumeration capped at n = 10");
    std::vector<int> bucket_of(static_cast<size_t>(n), 0);
    std::vector<PartialRanking> out;
    weak_orders_rec(n, (1u << n) - 1, 1, bucket_of, out);
    return out;
}

std::vector<Rational> MallowsPmf::rank_marginal(int u) const {
    const int n = table.empty() ? 0 : table.front().first.size();
    if (u < 1 || u > n) raise(ErrorKind::ElementOutOfRange, "element " + std::to_string(u));
    std::vector<Rational> marginal(static_cast<size_t>(n), Rational(0));
    for (const auto& [sigma, p] : table) marginal[sigma.rank_of(u) - 1] += p;
    return marginal;
}

MallowsPmf exact_mallows_pmf(const MallowsParams& params) {
    const int n = params.sigma0.size();
    if (n > 8) raise(ErrorKind::TooLarge, "pmf enumeration capped at n = 8");
    const Rational phi = snap_to_rational(params.phi);
    MallowsPmf pmf;
    pmf.normalizer = 0;
    for (Permutation& sigma : enumerate_permutations(n)) {
        const Rational w = rational_pow(phi, kendall_tau(params.sigma0, sigma));
        pmf.normalizer += w;
        pmf.table.emplace_back(std::move(sigma), w);
    }
    for (auto& [sigma, p] : pmf.table) p /= pmf.normalizer;
    return pmf;
}

// ---------------------------------------------------------------------------
// GMM sampling

namespace {

long double neighbor_count(const std::vector<std::vector<int>>& buckets) {
    const size_t t = buckets.size();
    long double count = t >= 2 ? 2.0L * static_cast<long double>(t - 1) : 0.0L;
    for (const auto& bucket : buckets)
        if (bucket.size() >= 2)
            count += std::pow(2.0L, static_cast<long double>(bucket.size())) - 2.0L;
    return count;
}

/// Cost in half-units of one pair under Kendall-with-ties scoring.
/// rel: -1 = x above y, 0 = tied, +1 = y above x.
inline std::int64_t pair_cost_halves(int rel, int rel0) {
    if (rel == 0 && rel0 == 0) return 0;
    if (rel == 0 || rel0 == 0) return 1;
    return rel == rel0 ? 0 : 2;
}

inline int centroid_rel(const PartialRanking& sigma0, int x, int y) {
    const int bx = sigma0.bucket_of(x);
    const int by = sigma0.bucket_of(y);
    if (bx < by) return -1;
    if (bx == by) return 0;
    return +1;
}

}  // namespace

GmmSampler::GmmSampler(GmmParams params, std::uint64_t seed, MetropolisConfig config)
    : params_(std::move(params)), rng_(seed), exact_(params_.sigma0.size() <= 7) {
    const int n = params_.sigma0.size();
    if (exact_) {
        support_ = enumerate_weak_orders(n);
        weights_.reserve(support_.size());
        cdf_.reserve(support_.size());
        double running = 0.0;
        for (const PartialRanking& order : support_) {
            const std::int64_t halves = kemeny(params_.sigma0, order).halves;
            const double w = std::pow(params_.phi, static_cast<double>(halves) / 2.0);
            weights_.push_back(w);
            running += w;
            cdf_.push_back(running);
        }
    } else {
        for (int k = 1; k <= params_.sigma0.bucket_count(); ++k)
            state_.push_back(params_.sigma0.bucket_members(k));
        state_cost_halves_ = 0;
        burn_in_ = config.burn_in >= 0 ? config.burn_in : std::max(2000, 50 * n * n);
        thinning_ = config.thinning >= 0 ? config.thinning : std::max(20, 2 * n * n);
    }
}

const std::vector<double>& GmmSampler::weights() const { return weights_; }

void GmmSampler::metropolis_steps(int count) {
    const long double phi = static_cast<long double>(params_.phi);
    for (int step = 0; step < count; ++step) {
        const long double n_current = neighbor_count(state_);
        const size_t t = state_.size();
        long double pick = static_cast<long double>(rng_.uniform01()) * n_current;

        std::vector<std::vector<int>> proposal;
        std::int64_t delta_halves = 0;

        const long double pair_moves = t >= 2 ? static_cast<long double>(t - 1) : 0.0L;
        if (pick < pair_moves) {
            // swap adjacent buckets
            const size_t i = std::min(static_cast<size_t>(pick), t - 2);
            proposal = state_;
            std::swap(proposal[i], proposal[i + 1]);
            for (int x : state_[i])
                for (int y : state_[i + 1]) {
                    const int rel0 = centroid_rel(params_.sigma0, x, y);
                    delta_halves += pair_cost_halves(+1, rel0) - pair_cost_halves(-1, rel0);
                }
        } else if (pick < 2 * pair_moves) {
            // merge adjacent buckets
            const size_t i = std::min(static_cast<size_t>(pick - pair_moves), t - 2);
            proposal = state_;
            std::vector<int> merged;
            std::merge(proposal[i].begin(), proposal[i].end(), proposal[i + 1].begin(),
                       proposal[i + 1].end(), std::back_inserter(merged));
            for (int x : state_[i])
                for (int y : state_[i + 1]) {
                    const int rel0 = centroid_rel(params_.sigma0, x, y);
                    delta_halves += pair_cost_halves(0, rel0) - pair_cost_halves(-1, rel0);
                }
            proposal[i] = std::move(merged);
            proposal.erase(proposal.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        } else {
            // split one bucket into an ordered pair of nonempty parts
            pick -= 2 * pair_moves;
            size_t target = t;
            for (size_t i = 0; i < t; ++i) {
                if (state_[i].size() < 2) continue;
                const long double splits =
                    std::pow(2.0L, static_cast<long double>(state_[i].size())) - 2.0L;
                if (pick < splits) {
                    target = i;
                    break;
                }
                pick -= splits;
            }
            if (target == t) continue;  // numerical edge; skip this step
            const std::vector<int>& bucket = state_[target];
            std::vector<int> first, second;
            do {
                first.clear();
                second.clear();
                for (int x : bucket) ((rng_.next() & 1) ? first : second).push_back(x);
            } while (first.empty() || second.empty());
            for (int x : first)
                for (int y : second) {
                    const int rel0 = centroid_rel(params_.sigma0, x, y);
                    delta_halves += pair_cost_halves(-1, rel0) - pair_cost_halves(0, rel0);
                }
            proposal = state_;
            proposal[target] = first;
            proposal.insert(proposal.begin() + static_cast<std::ptrdiff_t>(target) + 1,
                            std::move(second));
        }

        const long double n_proposal = neighbor_count(proposal);
        const long double ratio =
            std::pow(phi, static_cast<long double>(delta_halves) / 2.0L) *
            (n_current / n_proposal);
        if (ratio >= 1.0L || static_cast<long double>(rng_.uniform01()) < ratio) {
            state_ = std::move(proposal);
            state_cost_halves_ += delta_halves;
        }
    }
}

PartialRanking GmmSampler::sample() {
    if (exact_) {
        const double u = rng_.uniform01() * cdf_.back();
        const size_t idx = static_cast<size_t>(
            std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
        return support_[std::min(idx, support_.size() - 1)];
    }
    if (!warmed_up_) {
        metropolis_steps(burn_in_);
        warmed_up_ = true;
    }
    metropolis_steps(thinning_);
    const int n = params_.sigma0.size();
    std::vector<int> bucket_of(static_cast<size_t>(n), 0);
    for (size_t k = 0; k < state_.size(); ++k)
        for (int x : state_[k]) bucket_of[static_cast<size_t>(x - 1)] = static_cast<int>(k) + 1;
    return PartialRanking(std::move(bucket_of));
}

std::vector<PartialRanking> GmmSampler::draw(int count) {
    std::vector<PartialRanking> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(sample());
    return out;
}

PartialRanking sample_gmm_partial(const GmmParams& params, std::uint64_t seed,
                                  MetropolisConfig config) {
    return GmmSampler(params, seed, config).sample();
}

// ---------------------------------------------------------------------------
// Lemma checkers

namespace {

void check_subset_args(int n, int u, const std::vector<int>& subset, int max_n) {
    if (n > max_n)
        raise(ErrorKind::TooLarge, "enumeration capped at n = " + std::to_string(max_n));
    if (subset.empty()) raise(ErrorKind::EmptySubset, "subset");
    for (int a : subset)
        if (a < 1 || a > n) raise(ErrorKind::ElementOutOfRange, "element " + std::to_string(a));
    if (std::find(subset.begin(), subset.end(), u) == subset.end())
        raise(ErrorKind::ElementOutOfRange, "u must lie in the subset");
}

int rank_within(const Permutation& sigma, int u, const std::vector<int>& subset) {
    int rank = 0;
    for (int a : subset)
        if (sigma.rank_of(a) <= sigma.rank_of(u)) ++rank;
    return rank;
}

/// a + b * sqrt(phi) with exact rational components. When phi is a perfect
/// square the root is folded into the rational part so signs and quotients
/// stay well-defined.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(Rational a, Rational b, const Rational* root)
        : a_(std::move(a)), b_(std::move(b)), root_(root) {
        if (root_ != nullptr) {
            a_ += b_ * *root_;
            b_ = 0;
        }
    }

    static QuadExt sqrt_phi(const Rational* root) { return QuadExt(0, 1, root); }

    QuadExt add(const QuadExt& o) const { return with(a_ + o.a_, b_ + o.b_); }
    QuadExt sub(const QuadExt& o) const { return with(a_ - o.a_, b_ - o.b_); }
    QuadExt mul(const QuadExt& o, const Rational& phi) const {
        return with(a_ * o.a_ + b_ * o.b_ * phi, a_ * o.b_ + b_ * o.a_);
    }
    QuadExt div(const QuadExt& o, const Rational& phi) const {
        const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * phi;
        QuadExt conj = with(o.a_, -o.b_);
        QuadExt num = mul(conj, phi);
        return with(num.a_ / norm, num.b_ / norm);
    }

    int sign(const Rational& phi) const {
        const int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
        const int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        const Rational a2 = a_ * a_;
        const Rational b2phi = b_ * b_ * phi;
        if (a2 == b2phi) return 0;
        return a2 > b2phi ? sa : sb;
    }

    double to_double(double phi) const {
        return lca::to_double(a_) + lca::to_double(b_) * std::sqrt(phi);
    }

private:
    QuadExt with(Rational a, Rational b) const { return QuadExt(std::move(a), std::move(b), root_); }

    Rational a_ = 0;
    Rational b_ = 0;
    const Rational* root_ = nullptr;
};

/// sqrt of the rational if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& phi) {
    const BigInt num = boost::multiprecision::numerator(phi);
    const BigInt den = boost::multiprecision::denominator(phi);
    const BigInt rn = boost::multiprecision::sqrt(num);
    const BigInt rd = boost::multiprecision::sqrt(den);
    if (rn * rn == num && rd * rd == den) return Rational(rn, rd);
    return std::nullopt;
}

}  // namespace

PositionRatioReport check_lemma_position_ratios(const MallowsParams& params, int u,
                                                const std::vector<int>& subset) {
    const int n = params.sigma0.size();
    check_subset_args(n, u, subset, 8);
    std::vector<int> ids(subset);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const int a_size = static_cast<int>(ids.size());
    const bool full_set = a_size == n;

    const Rational phi = snap_to_rational(params.phi);
    const PhiSeries series(phi);

    std::vector<Rational> marginal(static_cast<size_t>(a_size), Rational(0));
    for (const Permutation& sigma : enumerate_permutations(n)) {
        const Rational w = rational_pow(phi, kendall_tau(params.sigma0, sigma));
        marginal[rank_within(sigma, u, ids) - 1] += w;
    }

    PositionRatioReport report;
    report.regime_ok = phi + phi * phi < 1 + rational_pow(phi, n);
    if (full_set) {
        report.lower_bound = phi;
        report.upper_bound = series.mode_ratio_bound(n);
    } else {
        report.lower_bound = 0;
        Rational best = 0;
        for (int l = 0; l <= n - a_size; ++l) {
            const Rational numer = phi + rational_pow(phi, l) * series.range(2, n - l - 1);
            const Rational denom = 1 + rational_pow(phi, 2 * l) * series.range(3, n - l);
            const Rational value = numer / denom;
            if (value > best) best = value;
        }
        report.upper_bound = best;
    }

    const int i0 = rank_within(params.sigma0, u, ids);
    auto push_entry = [&](int near, int far) {
        RatioEntry entry;
        entry.j_near = near;
        entry.j_far = far;
        entry.ratio = marginal[far - 1] / marginal[near - 1];
        entry.within =
            entry.ratio <= report.upper_bound && entry.ratio >= report.lower_bound;
        if (entry.ratio > 1) report.any_ratio_above_one = true;
        report.entries.push_back(std::move(entry));
    };
    for (int j = i0; j < a_size; ++j) push_entry(j, j + 1);
    for (int j = i0; j > 1; --j) push_entry(j, j - 1);

    report.bounds_hold = std::all_of(report.entries.begin(), report.entries.end(),
                                     [](const RatioEntry& e) { return e.within; });
    report.pass = report.regime_ok && report.bounds_hold;
    return report;
}

TailBoundReport check_lemma_tail_bounds(const MallowsParams& params, int u,
                                        const std::vector<int>& subset) {
    const int n = params.sigma0.size();
    check_subset_args(n, u, subset, 8);
    std::vector<int> ids(subset);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const int a_size = static_cast<int>(ids.size());

    const Rational phi = snap_to_rational(params.phi);
    const PhiSeries series(phi);
    const int i0 = rank_within(params.sigma0, u, ids);

    Rational below = 0, above = 0, total = 0;
    for (const Permutation& sigma : enumerate_permutations(n)) {
        const Rational w = rational_pow(phi, kendall_tau(params.sigma0, sigma));
        const int r = rank_within(sigma, u, ids);
        total += w;
        if (r > i0) below += w;
        else if (r < i0) above += w;
    }

    TailBoundReport report;
    report.upper_tail = below / total;
    report.lower_tail = above / total;
    report.upper_bound = series.range(1, a_size - i0) / series.range(0, a_size - i0);
    report.lower_bound = series.range(1, i0 - 1) / series.range(0, i0 - 1);
    report.upper_ok = report.upper_tail <= report.upper_bound && report.upper_tail < phi;
    report.lower_ok = report.lower_tail <= report.lower_bound && report.lower_tail < phi;
    report.upper_tight = report.upper_tail == report.upper_bound;
    report.lower_tight = report.lower_tail == report.lower_bound;
    report.pass = report.upper_ok && report.lower_ok;
    return report;
}

VoteBoundReport check_partial_vote_bound(const GmmParams& params, int u,
                                         const std::vector<int>& subset) {
    const int n = params.sigma0.size();
    check_subset_args(n, u, subset, 6);
    std::vector<int> ids(subset);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    const Rational phi = snap_to_rational(params.phi);
    const std::optional<Rational> root = exact_sqrt(phi);
    const Rational* root_ptr = root ? &*root : nullptr;
    const QuadExt sqrt_phi = QuadExt::sqrt_phi(root_ptr);
    auto phi_power_halves = [&](std::int64_t halves) {
        QuadExt value(rational_pow(phi, halves / 2), 0, root_ptr);
        if (halves % 2 != 0) value = value.mul(sqrt_phi, phi);
        return value;
    };

    // right edge of u's bucket in the centroid projected onto the subset
    const auto projected0 = project(params.sigma0, ids);
    const int u_local =
        static_cast<int>(std::lower_bound(ids.begin(), ids.end(), u) - ids.begin()) + 1;
    const int r0 = projected0.ranking.bucket_high(projected0.ranking.bucket_of(u_local));

    QuadExt numer(0, 0, root_ptr);
    QuadExt denom(0, 0, root_ptr);
    for (const PartialRanking& sigma : enumerate_weak_orders(n)) {
        const QuadExt w = phi_power_halves(kemeny(params.sigma0, sigma).halves);
        const auto projected = project(sigma, ids);
        const int bucket = projected.ranking.bucket_of(u_local);
        const int lo = projected.ranking.bucket_low(bucket);
        const int hi = projected.ranking.bucket_high(bucket);
        const int overlap = std::clamp(std::min(hi, r0) - lo + 1, 0, hi - lo + 1);
        denom = denom.add(w);
        if (overlap > 0)
            numer = numer.add(w.mul(QuadExt(Rational(overlap, hi - lo + 1), 0, root_ptr), phi));
    }
    const QuadExt expectation = numer.div(denom, phi);

    // 1 - sqrt(phi)/2 - phi/2
    const QuadExt bound =
        QuadExt(1 - phi / 2, Rational(-1, 2), root_ptr);

    VoteBoundReport report;
    // phi + sqrt(phi) < 1  <=>  (1 - phi) - sqrt(phi) > 0
    report.regime_ok = QuadExt(1 - phi, -1, root_ptr).sign(phi) > 0;
    report.bound_holds = expectation.sub(bound).sign(phi) >= 0;
    report.pass = report.regime_ok && report.bound_holds;
    report.expectation = expectation.to_double(params.phi);
    report.bound = bound.to_double(params.phi);
    return report;
}

std::int64_t sample_complexity_bound(BoundTheorem theorem, int n, double phi, double delta) {
    if (n < 2) raise(ErrorKind::RegimeViolated, "need n >= 2");
    if (!(delta > 0.0) || !(delta < 1.0)) raise(ErrorKind::RegimeViolated, "delta in (0,1)");
    if (!(phi > 0.0) || !(phi < 1.0)) raise(ErrorKind::InvalidPhi, "phi in (0,1)");
    double c = 0.0;
    double log_arg = 0.0;
    switch (theorem) {
        case BoundTheorem::Mode: {
            if (!(phi + phi * phi < 1.0 + std::pow(phi, n)))
                raise(ErrorKind::RegimeViolated, "mode rule needs phi + phi^2 < 1 + phi^n");
            const PhiSeries series(snap_to_rational(phi));
            const double q = lca::to_double(series.mode_ratio_bound(n));
            c = 2.0 * (1.0 + q) * (1.0 + q) / std::pow(1.0 - q, 4);
            log_arg = static_cast<double>(n) * n / (2.0 * delta);
            break;
        }
        case BoundTheorem::Median: {
            if (!(phi < 0.5)) raise(ErrorKind::RegimeViolated, "median rule needs phi < 0.5");
            c = 2.0 / ((1.0 - 2.0 * phi) * (1.0 - 2.0 * phi));
            log_arg = 2.0 * n / delta;
            break;
        }
        case BoundTheorem::PartialMedian: {
            if (!(phi + std::sqrt(phi) < 1.0))
                raise(ErrorKind::RegimeViolated, "partial median needs phi + sqrt(phi) < 1");
            const double q_prime = 1.0 - 0.5 * std::sqrt(phi) - 0.5 * phi;
            c = 2.0 / ((2.0 * q_prime - 1.0) * (2.0 * q_prime - 1.0));
            log_arg = 2.0 * n / delta;
            break;
        }
    }
    const double m = c * std::log(log_arg);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(m)));
}

}  // namespace lca
