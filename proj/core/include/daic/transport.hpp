#pragma once

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "daic/graph.hpp"
#include "daic/kernel.hpp"
#include "daic/types.hpp"

namespace daic {

template <class V>
struct DeltaMessage {
  VertexId dest;
  V value;
};

inline std::size_t route(VertexId dest, std::size_t shards) { return partition(dest, shards); }

using Clock = std::chrono::steady_clock;

inline constexpr std::size_t kDefaultFlushCap = 65536;

// Outgoing buffer for one destination worker. Messages to the same vid are
// combined with ⊕ as they arrive. Owned by a single producer thread.
template <class V>
class MsgTable {
 public:
  explicit MsgTable(const Kernel<V>& kernel, std::size_t cap = kDefaultFlushCap,
                    Clock::time_point now = Clock::now())
      : kernel_(&kernel), cap_(cap), last_flush_(now) {}

  // Returns true when `dest` had no entry yet.
  bool buffer(VertexId dest, const V& value) {
    ++buffered_;
    auto [it, inserted] = entries_.try_emplace(dest, value);
    if (!inserted) {
      it->second = kernel_->accumulate(it->second, value);
      ++aggregated_away_;
    }
    return inserted;
  }

  bool due(Clock::time_point now, Clock::duration timeout) const {
    return !entries_.empty() && (now - last_flush_ >= timeout || entries_.size() >= cap_);
  }

  // Everything buffered, in ascending vid order, if the timeout has passed or
  // the table reached its cap; otherwise nothing. Entries that combined to
  // zero are dropped (counted in dropped_zero).
  std::vector<DeltaMessage<V>> flush(Clock::time_point now, Clock::duration timeout) {
    if (!due(now, timeout)) return {};
    return take_all(now);
  }

  std::vector<DeltaMessage<V>> take_all(Clock::time_point now = Clock::now()) {
    std::vector<DeltaMessage<V>> out;
    out.reserve(entries_.size());
    for (auto& [dest, value] : entries_) {
      if (kernel_->is_zero(value)) {
        ++dropped_zero_;
        continue;
      }
      out.push_back(DeltaMessage<V>{dest, std::move(value)});
    }
    entries_.clear();
    std::sort(out.begin(), out.end(),
              [](const DeltaMessage<V>& a, const DeltaMessage<V>& b) { return a.dest < b.dest; });
    last_flush_ = now;
    return out;
  }

  // Read-only view for checkpoints.
  std::vector<DeltaMessage<V>> peek() const {
    std::vector<DeltaMessage<V>> out;
    for (const auto& [dest, value] : entries_) out.push_back(DeltaMessage<V>{dest, value});
    std::sort(out.begin(), out.end(),
              [](const DeltaMessage<V>& a, const DeltaMessage<V>& b) { return a.dest < b.dest; });
    return out;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t buffered() const { return buffered_; }
  std::size_t aggregated_away() const { return aggregated_away_; }
  std::size_t dropped_zero() const { return dropped_zero_; }

 private:
  const Kernel<V>* kernel_;
  std::size_t cap_;
  Clock::time_point last_flush_;
  std::unordered_map<VertexId, V> entries_;
  std::size_t buffered_ = 0;
  std::size_t aggregated_away_ = 0;
  std::size_t dropped_zero_ = 0;
};

// Inbox of one worker: FIFO of message batches from any number of senders,
// so each sender's batches arrive in the order sent. Reliable. With a
// nonzero capacity, push blocks while more than `capacity` messages are
// queued.
template <class V>
class Channel {
 public:
  using Batch = std::vector<DeltaMessage<V>>;

  explicit Channel(std::size_t capacity = 0) : capacity_(capacity) {}

  void push(Batch batch) {
    if (batch.empty()) return;
    std::unique_lock lock(mutex_);
    if (capacity_ > 0) {
      space_.wait(lock, [&] { return closed_ || queued_ < capacity_; });
    }
    queued_ += batch.size();
    ++pushed_;
    batches_.push_back(std::move(batch));
    ready_.notify_one();
  }

  // Waits up to `timeout` for a batch. Marks the consumer busy until
  // done_with() so idle() stays false while a popped batch is being applied.
  std::optional<Batch> pop(Clock::duration timeout) {
    std::unique_lock lock(mutex_);
    if (!ready_.wait_for(lock, timeout, [&] { return closed_ || !batches_.empty(); })) {
      return std::nullopt;
    }
    return take(lock);
  }

  std::optional<Batch> try_pop() {
    std::unique_lock lock(mutex_);
    return take(lock);
  }

  void done_with() {
    std::lock_guard lock(mutex_);
    busy_ = false;
    ++completed_;
    idle_.notify_all();
  }

  // True when nothing is queued and no popped batch is still being applied.
  bool idle() const {
    std::lock_guard lock(mutex_);
    return batches_.empty() && !busy_;
  }

  template <class Rep, class Period>
  bool wait_idle(std::chrono::duration<Rep, Period> timeout) {
    std::unique_lock lock(mutex_);
    return idle_.wait_for(lock, timeout, [&] { return batches_.empty() && !busy_; });
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    ready_.notify_all();
    space_.notify_all();
  }

  bool closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
  }

  // Batches pushed so far, and batches popped and fully applied so far.
  std::uint64_t pushed_batches() const {
    std::lock_guard lock(mutex_);
    return pushed_;
  }
  std::uint64_t completed_batches() const {
    std::lock_guard lock(mutex_);
    return completed_;
  }

  std::size_t queued_messages() const {
    std::lock_guard lock(mutex_);
    return queued_;
  }

 private:
  std::optional<Batch> take(std::unique_lock<std::mutex>&) {
    if (batches_.empty()) return std::nullopt;
    Batch batch = std::move(batches_.front());
    batches_.pop_front();
    queued_ -= batch.size();
    busy_ = true;
    space_.notify_all();
    return batch;
  }

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::condition_variable space_;
  std::condition_variable idle_;
  std::deque<Batch> batches_;
  std::size_t queued_ = 0;
  std::uint64_t pushed_ = 0;
  std::uint64_t completed_ = 0;
  bool busy_ = false;
  bool closed_ = false;
};

}  // namespace daic
