#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace growthlab {

inline unsigned& max_threads_ref() {
    static unsigned value = std::max(1u, std::thread::hardware_concurrency());
    return value;
}

inline unsigned max_threads() { return max_threads_ref(); }
inline void set_max_threads(unsigned n) { max_threads_ref() = n == 0 ? 1 : n; }

/// Run fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the thread cap, so callers that merge results
/// by chunk index stay deterministic.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    unsigned workers = std::min<std::size_t>(max_threads(), n);
    if (workers <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : threads) th.join();
}

} // namespace growthlab
