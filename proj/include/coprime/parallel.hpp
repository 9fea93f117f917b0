#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace coprime {

inline unsigned effective_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(chunk_index, lo, hi) over a fixed decomposition of [begin, end) into
// `chunks` contiguous ranges. The decomposition depends only on `chunks`, so
// callers that need reproducible floating-point recombination must pick a
// chunk count independent of the thread count and merge in chunk order.
template <class Fn>
void run_chunks(std::size_t begin, std::size_t end, std::size_t chunks, unsigned threads, Fn&& fn) {
    if (begin >= end || chunks == 0) return;
    const std::size_t total = end - begin;
    if (chunks > total) chunks = total;
    const unsigned nthreads = std::min<std::size_t>(effective_threads(threads), chunks);

    auto chunk_bounds = [&](std::size_t c) {
        const std::size_t lo = begin + total * c / chunks;
        const std::size_t hi = begin + total * (c + 1) / chunks;
        return std::pair<std::size_t, std::size_t>(lo, hi);
    };

    if (nthreads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [lo, hi] = chunk_bounds(c);
            fn(c, lo, hi);
        }
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t c = t; c < chunks; c += nthreads) {
                auto [lo, hi] = chunk_bounds(c);
                fn(c, lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace coprime
