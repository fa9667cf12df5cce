#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace maclaurin {

/// Samples per work chunk. Fixed so that chunk boundaries, and hence the
/// stream split(c) each chunk draws from, never depend on the thread count.
inline constexpr std::size_t kChunkSize = 2048;

/// 0 means one worker per hardware thread.
unsigned resolve_threads(unsigned requested) noexcept;

inline std::size_t chunk_count(std::size_t total, std::size_t chunk = kChunkSize) noexcept {
  return (total + chunk - 1) / chunk;
}

/// Evaluates f(c) for c in [0, chunks) on up to `threads` workers and
/// returns the results indexed by c. The first exception thrown by any chunk
/// is rethrown after all workers stop.
template <class F>
auto parallel_chunks(std::size_t chunks, unsigned threads, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(chunks);
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) out[c] = f(c);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks || failed.load()) return;
      try {
        out[c] = f(c);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace maclaurin
