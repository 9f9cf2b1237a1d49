#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace borelreg {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n). Each call must touch only its own output slot;
// the caller reduces slots in index order, so results are identical for any
// worker count.
template <class Fn>
void parallel_for_slots(std::size_t n, int workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::size_t>(n, workers));
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
}

} // namespace borelreg
