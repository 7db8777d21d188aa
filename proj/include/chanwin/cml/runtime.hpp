#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "chanwin/errors.hpp"

namespace chanwin::cml {

/// Identity of a spawned thread; fresh per spawn for the process lifetime.
class ThreadId {
 public:
  ThreadId() = default;
  explicit ThreadId(std::uint64_t v) : value_(v) {}
  std::uint64_t value() const { return value_; }
  friend bool operator==(ThreadId a, ThreadId b) { return a.value_ == b.value_; }
  friend bool operator!=(ThreadId a, ThreadId b) { return a.value_ != b.value_; }

 private:
  std::uint64_t value_ = 0;
};

namespace detail {
inline thread_local bool t_registered = false;
}

/// Process-wide kernel state: thread spawning, activity accounting used
/// for quiescence detection, the seedable choice policy, and the global
/// channel creation order.
///
/// Activity accounting: `active` counts spawned threads that are
/// currently runnable (not blocked in sync or a mailbox wait);
/// `pending` counts messages sitting in mailboxes. The system is
/// quiescent when both are zero -- every spawned thread is blocked and
/// no delivery is in flight.
class Runtime {
 public:
  static Runtime& get() {
    static Runtime rt;
    return rt;
  }

  ThreadId spawn(std::function<void()> body) {
    ThreadId id(next_thread_.fetch_add(1));
    active_add(1);
    try {
      std::thread([b = std::move(body)]() {
        detail::t_registered = true;
        try {
          b();
        } catch (...) {
          // Uncaught exceptions from raw spawned bodies are dropped;
          // the window layer installs its own reporting wrapper.
        }
        Runtime::get().active_add(-1);
      }).detach();
    } catch (const std::system_error& e) {
      active_add(-1);
      throw FrameworkError(std::string("spawn: ") + e.what());
    }
    return id;
  }

  static bool current_thread_registered() { return detail::t_registered; }

  void active_add(int delta) {
    active_.fetch_add(delta);
    if (delta < 0) poke();
  }
  void pending_add(long delta) {
    pending_.fetch_add(delta);
    if (delta < 0) poke();
  }
  long active() const { return active_.load(); }
  long pending() const { return pending_.load(); }

  /// Wake quiescence waiters; called whenever activity may have dropped
  /// or when an external condition (e.g. the system queue) changed.
  void poke() {
    { std::lock_guard<std::mutex> lk(qm_); }
    qcv_.notify_all();
  }

  /// Block until the system is quiescent or `interrupted()` turns true.
  /// Returns true when quiescence was reached first.
  template <class Pred>
  bool wait_quiescent_or(Pred interrupted) {
    std::unique_lock<std::mutex> lk(qm_);
    qcv_.wait(lk, [&] {
      return interrupted() || (active_.load() == 0 && pending_.load() == 0);
    });
    return !interrupted();
  }

  std::uint64_t next_channel_index() { return next_chan_.fetch_add(1); }
  std::uint64_t next_token_seq() { return next_token_.fetch_add(1); }

  /// Seedable policy behind nondeterministic choice: a ready set of
  /// size k yields each index with probability 1/k.
  void seed_choice(std::uint64_t seed) {
    std::lock_guard<std::mutex> lk(rng_m_);
    rng_.seed(seed);
  }
  std::size_t pick(std::size_t k) {
    if (k <= 1) return 0;
    std::lock_guard<std::mutex> lk(rng_m_);
    return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng_);
  }

 private:
  Runtime() = default;
  std::atomic<std::uint64_t> next_thread_{1};
  std::atomic<std::uint64_t> next_chan_{1};
  std::atomic<std::uint64_t> next_token_{1};
  std::atomic<long> active_{0};
  std::atomic<long> pending_{0};
  std::mutex qm_;
  std::condition_variable qcv_;
  std::mutex rng_m_;
  std::mt19937_64 rng_{0x2545f4914f6cdd1dULL};
};

inline Runtime& runtime() { return Runtime::get(); }

inline ThreadId spawn(std::function<void()> body) {
  return runtime().spawn(std::move(body));
}

inline void seed_choice(std::uint64_t seed) { runtime().seed_choice(seed); }

}  // namespace chanwin::cml
