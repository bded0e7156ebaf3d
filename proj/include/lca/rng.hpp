#pragma once

#include <cstdint>
#include <random>

namespace lca {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream-splitting rule used everywhere randomness fans out (benchmark
/// trials, restarts, per-sample draws): children of a seed are
/// splitmix64-mixed with their stream indices, so parallel schedules see
/// the same streams as sequential ones.
inline std::uint64_t seed_split(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(seed ^ splitmix64(a + 0x100 + splitmix64(b + 0x9000)));
}

/// mt19937_64 with portable bounded draws; std::uniform_int_distribution is
/// implementation-defined, which would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [lo, hi], inclusive, unbiased via rejection.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % span;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return lo + static_cast<int>(v % span);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (int i = static_cast<int>(items.size()) - 1; i > 0; --i)
            std::swap(items[static_cast<size_t>(i)],
                      items[static_cast<size_t>(uniform_int(0, i))]);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace lca
