#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>

#include "chanwin/cml/runtime.hpp"

namespace chanwin::cml {

using Unit = std::monostate;

/// Shared single-use commit point for one sync. Enrollments on every
/// base event of the sync reference the same token; the first party to
/// move it to Synched commits the whole sync.
///
/// States: Waiting (claimable), Tentative (the owning thread is mid
/// pair-commit on some channel), Synched (committed, irrevocable).
/// Tentative-vs-tentative conflicts are broken by token seq order: the
/// lower seq spins, the higher seq backs off and retries.
struct CommitToken {
  enum : int { kWaiting = 0, kTentative = 1, kSynched = 2 };

  std::atomic<int> state{kWaiting};
  const std::uint64_t seq = runtime().next_token_seq();

  std::mutex m;
  std::condition_variable cv;
  int branch = -1;           // committed branch index, valid once done
  bool done = false;         // result published
  bool counted_out = false;  // owner decremented the active count

  bool try_tentative() {
    int expect = kWaiting;
    return state.compare_exchange_strong(expect, kTentative);
  }
  void abort_tentative() { state.store(kWaiting); }
  void commit_tentative() { state.store(kSynched); }

  enum class ClaimResult { Won, Dead, Backoff };

  /// Passive claim by another thread. `claimer_seq` is 0 for a running
  /// thread with no published token of its own (it may always spin).
  ClaimResult try_claim(std::uint64_t claimer_seq) {
    for (;;) {
      int s = state.load();
      if (s == kSynched) return ClaimResult::Dead;
      if (s == kWaiting) {
        int expect = kWaiting;
        if (state.compare_exchange_strong(expect, kSynched))
          return ClaimResult::Won;
        continue;
      }
      // Tentative holder; it resolves in bounded steps.
      if (claimer_seq != 0 && claimer_seq > seq) return ClaimResult::Backoff;
      std::this_thread::yield();
    }
  }

  bool synched() const { return state.load() == kSynched; }
};

/// Publish the committed branch and wake the blocked owner, restoring
/// its activity count if it had been parked.
inline void publish_commit(CommitToken& t, int branch_index) {
  {
    std::lock_guard<std::mutex> lk(t.m);
    t.branch = branch_index;
    t.done = true;
    if (t.counted_out) {
      runtime().active_add(1);
      t.counted_out = false;
    }
  }
  t.cv.notify_all();
}

template <class T>
struct ValueSlot {
  std::optional<T> value;
};

/// Rendezvous state: queues of enrolled senders and receivers. The
/// queues never simultaneously hold a live sender and a live receiver
/// from different syncs -- enqueueing checks for a partner under the
/// same lock.
template <class T>
struct ChanCore {
  struct SendNode {
    std::shared_ptr<CommitToken> tok;
    int branch;
    T value;
  };
  struct RecvNode {
    std::shared_ptr<CommitToken> tok;
    int branch;
    std::shared_ptr<ValueSlot<T>> slot;
  };

  std::mutex m;
  const std::uint64_t index = runtime().next_channel_index();
  std::deque<SendNode> senders;
  std::deque<RecvNode> receivers;
};

/// Unbuffered multi-producer/multi-consumer rendezvous channel; a value
/// transfers only when a sender and a receiver commit together.
/// Copies share identity.
template <class T>
class Channel {
 public:
  Channel() : core_(std::make_shared<ChanCore<T>>()) {}

  ChanCore<T>& core() const { return *core_; }
  std::shared_ptr<ChanCore<T>> core_ptr() const { return core_; }

  friend bool operator==(const Channel& a, const Channel& b) {
    return a.core_ == b.core_;
  }
  friend bool operator!=(const Channel& a, const Channel& b) {
    return a.core_ != b.core_;
  }

 private:
  std::shared_ptr<ChanCore<T>> core_;
};

template <class T>
Channel<T> channel() {
  return Channel<T>{};
}

}  // namespace chanwin::cml
