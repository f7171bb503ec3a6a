#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace matdiff {

/// Worker count for parallel drivers. 0 means hardware concurrency.
inline std::atomic<unsigned>& worker_count_setting() {
  static std::atomic<unsigned> n{0};
  return n;
}

inline void set_worker_count(unsigned n) { worker_count_setting().store(n); }

inline unsigned worker_count() {
  const unsigned n = worker_count_setting().load();
  if (n != 0) return n;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Splits [0, count) into fixed chunks of `chunk` items, maps each chunk with
/// `map(begin, end)` on a pool of workers, then folds the per-chunk results
/// left to right with `merge`. Chunk boundaries and fold order do not depend
/// on the worker count, so the result is reproducible bit for bit.
template <class T, class Map, class Merge>
T chunked_reduce(std::size_t count, std::size_t chunk, T init, Map map, Merge merge) {
  if (chunk == 0) chunk = 1;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<T> partial(chunks, init);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::size_t begin = c * chunk;
        partial[c] = map(begin, std::min(count, begin + chunk));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  T acc = std::move(init);
  for (auto& p : partial) acc = merge(std::move(acc), std::move(p));
  return acc;
}

/// Runs fn(i) for every i in [0, count), storing results by index.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  chunked_reduce<int>(
      count, 1, 0,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
        return 0;
      },
      [](int a, int) { return a; });
  return out;
}

}  // namespace matdiff
