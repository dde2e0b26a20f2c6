#include "pbl/exec.hpp"

#include <atomic>
#include <thread>

namespace pbl {

void parallel_chunks(const Exec& ex, std::size_t n_chunks,
                     const std::function<void(std::size_t)>& fn) {
    const int nthreads = ex.threads > 1 ? ex.threads : 1;
    if (nthreads == 1 || n_chunks <= 1) {
        for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(nthreads, n_chunks);
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_chunks) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
    // splitmix64 step keyed by the chunk index
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (chunk + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace pbl
