#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "mst/rng.hpp"

namespace mst {

inline constexpr std::size_t kDefaultChunk = 4096;

/// Run `fn(chunk_index, begin, end, stream)` over [0, total) split into fixed
/// chunks. Each chunk gets a stream derived from (master, path..., chunk),
/// so the produced values depend only on the chunk index, never on the worker
/// count or scheduling order. Callers reduce per-chunk results in chunk order.
inline void parallel_chunks(
    std::size_t total, std::uint64_t master,
    std::initializer_list<std::uint64_t> path, int workers,
    const std::function<void(std::size_t chunk, std::size_t begin,
                             std::size_t end, RandomStream& stream)>& fn,
    std::size_t chunk_size = kDefaultChunk) {
    if (total == 0) return;
    if (workers < 1) workers = 1;
    std::vector<std::uint64_t> base(path);
    const std::size_t n_chunks = (total + chunk_size - 1) / chunk_size;

    auto run_chunk = [&](std::size_t c) {
        std::vector<std::uint64_t> p = base;
        p.push_back(c);
        RandomStream stream(derive_seed(master, p));
        const std::size_t begin = c * chunk_size;
        const std::size_t end = std::min(total, begin + chunk_size);
        fn(c, begin, end, stream);
    };

    if (workers == 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next.fetch_add(1); c < n_chunks;
                 c = next.fetch_add(1)) {
                run_chunk(c);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mst
