#pragma once

#include <vector>

namespace lca {

/// Fenwick (binary indexed) tree over positions 1..n, used as an
/// order-statistics structure by the codecs.
class FenwickTree {
public:
    explicit FenwickTree(int n) : n_(n), tree_(static_cast<size_t>(n) + 1, 0) {}

    void add(int pos, int delta) {
        for (; pos <= n_; pos += pos & -pos) tree_[pos] += delta;
    }

    /// Sum over [1..pos].
    int prefix(int pos) const {
        int sum = 0;
        for (; pos > 0; pos -= pos & -pos) sum += tree_[pos];
        return sum;
    }

    int total() const { return prefix(n_); }

    /// Smallest position p with prefix(p) >= k; requires 1 <= k <= total().
    int find_kth(int k) const {
        int pos = 0;
        int mask = 1;
        while ((mask << 1) <= n_) mask <<= 1;
        for (; mask != 0; mask >>= 1) {
            int next = pos + mask;
            if (next <= n_ && tree_[next] < k) {
                pos = next;
                k -= tree_[next];
            }
        }
        return pos + 1;
    }

private:
    int n_;
    std::vector<int> tree_;
};

}  // namespace lca
