#pragma once

#include <thread>
#include <vector>

namespace rct::detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(begin, end) over a partition of [begin, end) across `threads`
/// workers. Each chunk's work must write to disjoint state; results must not
/// depend on the partition (callers sum counts or fill preassigned slots).
template <class Fn>
void parallel_for_chunks(long begin, long end, int threads, Fn&& fn) {
    const long total = end - begin;
    if (total <= 0) return;
    threads = resolve_threads(threads);
    if (threads <= 1 || total == 1) {
        fn(begin, end);
        return;
    }
    const long n_chunks = std::min<long>(threads, total);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_chunks));
    const long base = total / n_chunks;
    const long rem = total % n_chunks;
    long cursor = begin;
    for (long c = 0; c < n_chunks; ++c) {
        const long len = base + (c < rem ? 1 : 0);
        const long lo = cursor;
        const long hi = cursor + len;
        cursor = hi;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rct::detail
