#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "excess/config.hpp"

namespace excess {

// Splits [begin, end) into contiguous chunks, runs `work` on each chunk in
// its own thread, and hands the per-chunk results to `merge` in chunk
// order. Totals are therefore independent of scheduling.
template <typename Accum>
void chunked_scan(std::uint64_t begin, std::uint64_t end, int threads,
                  const std::function<Accum(std::uint64_t, std::uint64_t)>& work,
                  const std::function<void(Accum&&)>& merge) {
    if (end <= begin) return;
    std::uint64_t total = end - begin;
    int workers = worker_count(threads);
    if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<int>(total);
    if (workers <= 1) {
        merge(work(begin, end));
        return;
    }
    std::vector<Accum> results(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::uint64_t chunk = total / static_cast<std::uint64_t>(workers);
    std::uint64_t rem = total % static_cast<std::uint64_t>(workers);
    std::uint64_t lo = begin;
    for (int t = 0; t < workers; ++t) {
        std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(t) < rem ? 1 : 0);
        pool.emplace_back([&results, &work, t, lo, hi] { results[static_cast<size_t>(t)] = work(lo, hi); });
        lo = hi;
    }
    for (auto& th : pool) th.join();
    for (auto& r : results) merge(std::move(r));
}

}  // namespace excess
