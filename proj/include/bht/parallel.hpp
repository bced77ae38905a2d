#pragma once
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bht {

// Thread cap: BHT_THREADS if set, else hardware concurrency.
inline int max_threads() {
  if (const char* env = std::getenv("BHT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(chunk_index, begin, end) over `chunks` contiguous slices of
// [0, count). Work items must not depend on execution order; every chunk
// sees the same slice no matter how many threads run.
inline void parallel_chunks(std::int64_t count, int chunks,
                            const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
  if (chunks < 1) chunks = 1;
  auto slice = [&](int c) {
    std::int64_t begin = count * c / chunks;
    std::int64_t end = count * (c + 1) / chunks;
    if (begin < end) fn(c, begin, end);
  };
  int workers = std::min(chunks, max_threads());
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) slice(c);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int c = w; c < chunks; c += workers) slice(c);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bht
