#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace poslp {

/// Fixed-size worker pool for data-parallel loops.
///
/// Work is split into chunks whose boundaries depend only on the loop length
/// and the chunk size, never on the number of workers. Each output element is
/// written by exactly one chunk, so results are identical for any thread
/// count as long as the per-chunk body is deterministic.
class Executor {
 public:
  /// `threads == 0` selects std::thread::hardware_concurrency().
  explicit Executor(std::size_t threads = 1);
  ~Executor();

  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  std::size_t threads() const noexcept { return workers_.size() + 1; }

  /// Calls body(begin, end) for every chunk of [0, count). Blocks until all
  /// chunks are done. The calling thread participates.
  void for_chunks(std::size_t count, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

 private:
  void worker_loop();
  void drain();

  std::vector<std::jthread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;

  // Current job, guarded by mutex_.
  const std::function<void(std::size_t, std::size_t)>* body_ = nullptr;
  std::size_t count_ = 0;
  std::size_t chunk_ = 1;
  std::size_t next_ = 0;
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  bool stop_ = false;
};

inline constexpr std::size_t kReductionChunk = 1024;

/// Sum with a fixed association order: sequential within chunks of
/// kReductionChunk elements, then the chunk partials summed left to right.
/// Bitwise reproducible regardless of `executor` and its thread count.
double ordered_sum(std::span<const double> values, Executor* executor = nullptr);

}  // namespace poslp
