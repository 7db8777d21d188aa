#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <vector>

#include "chanwin/cml/runtime.hpp"

namespace chanwin::cml {

/// Unbounded FIFO hand-off queue. Decouples a producer that must never
/// block (the message pump) from a consumer thread that forwards into a
/// synchronous channel. Queued items are counted in the runtime's
/// pending-work total so quiescence detection sees undelivered
/// messages; items pushed with counted=false (final lifecycle
/// deliveries) are exempt.
template <class T>
class Mailbox {
 public:
  /// Returns false if the mailbox was already closed (item dropped).
  bool push(T v, bool counted = true) {
    {
      std::lock_guard<std::mutex> lk(m_);
      if (closed_) return false;
      if (counted) runtime().pending_add(1);
      q_.push_back(Item{std::move(v), counted});
    }
    cv_.notify_one();
    return true;
  }

  /// Enqueues several items atomically: a consumer that takes the whole
  /// queue sees either none or all of them. Returns false when closed.
  bool push_all(std::vector<T> vs, bool counted = true) {
    {
      std::lock_guard<std::mutex> lk(m_);
      if (closed_) return false;
      for (auto& v : vs) {
        if (counted) runtime().pending_add(1);
        q_.push_back(Item{std::move(v), counted});
      }
    }
    cv_.notify_one();
    return true;
  }

  /// Blocks until an item is available; returns nullopt once closed and
  /// drained. The waiting thread is parked in the activity count.
  std::optional<T> pop_wait() {
    std::unique_lock<std::mutex> lk(m_);
    while (q_.empty() && !closed_) {
      bool counted = Runtime::current_thread_registered();
      if (counted) runtime().active_add(-1);
      cv_.wait(lk, [&] { return !q_.empty() || closed_; });
      if (counted) runtime().active_add(1);
    }
    if (q_.empty()) return std::nullopt;
    Item it = std::move(q_.front());
    q_.pop_front();
    if (it.counted) runtime().pending_add(-1);
    return std::move(it.value);
  }

  /// Blocks until at least one item is available and takes everything
  /// queued; returns an empty vector once closed and drained. Taking the
  /// whole batch un-counts items immediately, so a consumer that blocks
  /// delivering one item does not hold later items in the pending total.
  std::vector<T> pop_all_wait() {
    std::unique_lock<std::mutex> lk(m_);
    while (q_.empty() && !closed_) {
      bool counted = Runtime::current_thread_registered();
      if (counted) runtime().active_add(-1);
      cv_.wait(lk, [&] { return !q_.empty() || closed_; });
      if (counted) runtime().active_add(1);
    }
    std::vector<T> out;
    out.reserve(q_.size());
    for (auto& it : q_) {
      if (it.counted) runtime().pending_add(-1);
      out.push_back(std::move(it.value));
    }
    q_.clear();
    return out;
  }

  /// Final delivery: enqueue one last item and refuse further pushes.
  /// The final item is counted as pending work: quiescence must not be
  /// reported while it sits undelivered, or a waiter could observe a
  /// settled system whose teardown is still in flight.
  bool push_final(T v) {
    {
      std::lock_guard<std::mutex> lk(m_);
      if (closed_) return false;
      runtime().pending_add(1);
      q_.push_back(Item{std::move(v), true});
      closed_ = true;
    }
    cv_.notify_all();
    return true;
  }

  /// Discards queued items and refuses further pushes. The consumer
  /// wakes and sees end-of-stream.
  void close() {
    {
      std::lock_guard<std::mutex> lk(m_);
      closed_ = true;
      for (auto& it : q_)
        if (it.counted) runtime().pending_add(-1);
      q_.clear();
    }
    cv_.notify_all();
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lk(m_);
    return q_.size();
  }

 private:
  struct Item {
    T value;
    bool counted;
  };
  mutable std::mutex m_;
  std::condition_variable cv_;
  std::deque<Item> q_;
  bool closed_ = false;
};

}  // namespace chanwin::cml
