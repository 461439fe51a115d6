#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace frfbands {

/// Resolves a user-facing thread cap: 0 means "use the hardware".
inline unsigned resolve_threads(unsigned requested) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return requested == 0 ? hw : std::min(requested, hw);
}

/// Runs fn(begin, end) over static contiguous chunks of [first, last).
/// Callers must write results into per-index slots; with that discipline the
/// output is identical for any thread count.
template <typename Fn>
void parallel_chunks(std::size_t first, std::size_t last, unsigned threads, Fn&& fn) {
    const std::size_t total = last - first;
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(total, 1)));
    if (total == 0) return;
    if (n_threads <= 1) {
        fn(first, last);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (total + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
        const std::size_t b = first + static_cast<std::size_t>(t) * chunk;
        const std::size_t e = std::min(last, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

} // namespace frfbands
