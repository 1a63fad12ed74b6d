#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace casimir {

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to `workers`
/// threads. The chunk decomposition is fixed by the caller, so per-chunk
/// results can be reduced in chunk order afterwards; outputs are then
/// independent of the worker count.
template <class Fn>
void parallel_for_chunks(std::size_t n_chunks, unsigned workers, Fn&& fn) {
    if (workers <= 1 || n_chunks <= 1) {
        for (std::size_t i = 0; i < n_chunks; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_chunks)
                return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(n_chunks));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

} // namespace casimir
