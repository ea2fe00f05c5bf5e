#include "poslp/parallel.hpp"

#include <algorithm>

namespace poslp {

Executor::Executor(std::size_t threads) {
  if (threads == 0) {
    threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  workers_.reserve(threads - 1);
  for (std::size_t k = 1; k < threads; ++k) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

Executor::~Executor() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  // jthread joins on destruction.
}

void Executor::drain() {
  std::unique_lock lock(mutex_);
  while (next_ < count_) {
    const std::size_t begin = next_;
    const std::size_t end = std::min(count_, begin + chunk_);
    next_ = end;
    lock.unlock();
    (*body_)(begin, end);
    lock.lock();
  }
}

void Executor::worker_loop() {
  std::size_t seen = 0;
  std::unique_lock lock(mutex_);
  for (;;) {
    wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
    if (stop_) return;
    seen = generation_;
    ++active_;
    lock.unlock();
    drain();
    lock.lock();
    if (--active_ == 0) done_.notify_all();
  }
}

void Executor::for_chunks(
    std::size_t count, std::size_t chunk,
    const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  chunk = std::max<std::size_t>(1, chunk);
  if (workers_.empty() || count <= chunk) {
    for (std::size_t b = 0; b < count; b += chunk) {
      body(b, std::min(count, b + chunk));
    }
    return;
  }
  {
    std::lock_guard lock(mutex_);
    body_ = &body;
    count_ = count;
    chunk_ = chunk;
    next_ = 0;
    ++generation_;
  }
  wake_.notify_all();
  drain();
  std::unique_lock lock(mutex_);
  done_.wait(lock, [&] { return active_ == 0 && next_ >= count_; });
  body_ = nullptr;
  count_ = 0;
  next_ = 0;
}

double ordered_sum(std::span<const double> values, Executor* executor) {
  if (values.size() <= kReductionChunk) {
    double s = 0.0;
    for (double v : values) s += v;
    return 0.0 + s;  // same association as the chunked path
  }
  const std::size_t chunks =
      (values.size() + kReductionChunk - 1) / kReductionChunk;
  std::vector<double> partial(chunks, 0.0);
  auto body = [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      const std::size_t b = c * kReductionChunk;
      const std::size_t e = std::min(values.size(), b + kReductionChunk);
      double s = 0.0;
      for (std::size_t k = b; k < e; ++k) s += values[k];
      partial[c] = s;
    }
  };
  if (executor != nullptr) {
    executor->for_chunks(chunks, 1, body);
  } else {
    body(0, chunks);
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace poslp
