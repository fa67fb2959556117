#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace condvol {

// Samples per worker chunk. The chunk layout is a pure function of the total
// sample count, so results are identical for any thread count.
inline constexpr long long kChunkSize = 1LL << 18;

inline long long chunk_count(long long n_total, long long chunk_size = kChunkSize) {
  return (n_total + chunk_size - 1) / chunk_size;
}

// Runs fn(chunk_index, samples_in_chunk) over all chunks and returns the
// per-chunk results indexed by chunk. Threads pull chunks from an atomic
// counter; reductions over the returned vector are deterministic because the
// caller folds them in chunk order.
template <typename Partial, typename ChunkFn>
std::vector<Partial> run_chunks(long long n_total, int threads, ChunkFn fn,
                                long long chunk_size = kChunkSize) {
  const long long n_chunks = chunk_count(n_total, chunk_size);
  std::vector<Partial> partials(static_cast<std::size_t>(n_chunks));
  if (n_chunks == 0) return partials;

  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const long long idx = next.fetch_add(1);
      if (idx >= n_chunks || failed.load()) return;
      const long long begin = idx * chunk_size;
      const long long count = std::min(chunk_size, n_total - begin);
      try {
        partials[static_cast<std::size_t>(idx)] = fn(static_cast<std::uint64_t>(idx), count);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  const int n_workers =
      std::max(1, static_cast<int>(std::min<long long>(threads, n_chunks)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) std::rethrow_exception(error);
  return partials;
}

}  // namespace condvol
