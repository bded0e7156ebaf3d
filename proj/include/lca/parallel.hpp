#pragma once

#include <thread>
#include <vector>

namespace lca {

/// Runs fn(begin, end) over a partition of [0, total) on `threads` workers.
/// Workers own disjoint index ranges, so writes to per-index slots need no
/// synchronization and results cannot depend on scheduling.
template <typename Fn>
void parallel_for(int total, int threads, Fn&& fn) {
    if (threads <= 1 || total <= 1) {
        fn(0, total);
        return;
    }
    if (threads > total) threads = total;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(threads));
    const int chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(total, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& w : workers) w.join();
}

}  // namespace lca
