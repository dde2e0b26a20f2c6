// Execution context: thread budget and RNG seed shared by the drivers.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace pbl {

struct Exec {
    int threads = 1;
    std::uint64_t seed = 12345;
};

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to ex.threads
/// threads. Chunk indices are dense so callers can combine partial results in
/// index order, which keeps every reduction independent of the thread count.
void parallel_chunks(const Exec& ex, std::size_t n_chunks,
                     const std::function<void(std::size_t)>& fn);

/// Deterministic per-chunk RNG stream seed.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

}  // namespace pbl
