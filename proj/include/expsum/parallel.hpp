// Fork-join helpers. All reductions used in this project are associative and
// partition-independent, so results do not depend on the thread count.
#ifndef EXPSUM_PARALLEL_HPP
#define EXPSUM_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace expsum {

// requested == 0 means auto (hardware concurrency).
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// EXPSUM_THREADS is the fallback when the caller passes no explicit count.
inline unsigned threads_from_env() {
  if (const char* env = std::getenv("EXPSUM_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // auto
}

// Splits [0, total) into contiguous chunks, one worker per chunk.
// fn(worker_index, begin, end) runs on its own thread (or inline when a
// single worker suffices).
inline void parallel_chunks(std::uint64_t total, unsigned threads,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  threads = resolve_threads(threads);
  if (total == 0) return;
  if (threads <= 1 || total == 1) {
    fn(0, 0, total);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = total / workers;
  const std::uint64_t rem = total % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    pool.emplace_back(fn, w, begin, end);
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace expsum

#endif  // EXPSUM_PARALLEL_HPP
