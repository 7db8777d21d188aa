#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "chanwin/cml/channel.hpp"
#include "chanwin/cml/clock.hpp"

namespace chanwin::cml {

// ---------------------------------------------------------------------------
// Per-sync branches. An event is an immutable description; every sync
// expands it into fresh branch objects (one per base communication on a
// flattened path), so events are freely re-synchronizable.

template <class T>
struct Branch {
  enum class Enroll { Waiting, SelfCommitted, Lost };

  virtual ~Branch() = default;

  /// Cheap readiness probe for the poll phase; may purge dead waiters.
  virtual bool ready() = 0;

  /// Active commit attempt by a running thread (no published token).
  virtual bool fire(std::optional<T>& out) = 0;

  /// Enroll this branch on the shared commit token. Checks for a
  /// partner under the same lock as the enqueue, so a match can never
  /// slip between poll and block.
  virtual Enroll enroll(const std::shared_ptr<CommitToken>& tok, int index) = 0;

  /// Result extraction after this branch committed passively (or via
  /// enroll-time self commit). Runs the wrap chain on the way out.
  virtual T result() = 0;
};

template <class T>
using BranchList = std::vector<std::unique_ptr<Branch<T>>>;

namespace detail {

template <class U>
class SendBranch final : public Branch<Unit> {
 public:
  SendBranch(std::shared_ptr<ChanCore<U>> core, U value)
      : core_(std::move(core)), value_(std::move(value)) {}

  bool ready() override {
    std::lock_guard<std::mutex> lk(core_->m);
    purge(core_->receivers);
    return !core_->receivers.empty();
  }

  bool fire(std::optional<Unit>& out) override {
    std::unique_lock<std::mutex> lk(core_->m);
    auto& q = core_->receivers;
    for (auto it = q.begin(); it != q.end();) {
      auto r = it->tok->try_claim(0);
      if (r == CommitToken::ClaimResult::Won) {
        auto node = std::move(*it);
        q.erase(it);
        lk.unlock();
        node.slot->value = value_;
        publish_commit(*node.tok, node.branch);
        out = Unit{};
        return true;
      }
      it = q.erase(it);  // Dead
    }
    return false;
  }

  Enroll enroll(const std::shared_ptr<CommitToken>& tok, int index) override {
    for (;;) {
      std::unique_lock<std::mutex> lk(core_->m);
      bool backoff = false;
      auto& q = core_->receivers;
      for (auto it = q.begin(); it != q.end();) {
        if (it->tok->synched()) {
          it = q.erase(it);
          continue;
        }
        if (it->tok == tok) {  // same sync; a choice never matches itself
          ++it;
          continue;
        }
        if (!tok->try_tentative()) return Enroll::Lost;
        auto r = it->tok->try_claim(tok->seq);
        if (r == CommitToken::ClaimResult::Won) {
          auto node = std::move(*it);
          q.erase(it);
          tok->commit_tentative();
          lk.unlock();
          node.slot->value = value_;
          publish_commit(*node.tok, node.branch);
          publish_commit(*tok, index);
          return Enroll::SelfCommitted;
        }
        tok->abort_tentative();
        if (r == CommitToken::ClaimResult::Dead) {
          it = q.erase(it);
          continue;
        }
        backoff = true;
        break;
      }
      if (!backoff) {
        core_->senders.push_back({tok, index, value_});
        return Enroll::Waiting;
      }
      lk.unlock();
      std::this_thread::yield();
    }
  }

  Unit result() override { return Unit{}; }

 private:
  template <class Q>
  static void purge(Q& q) {
    while (!q.empty() && q.front().tok->synched()) q.pop_front();
  }

  std::shared_ptr<ChanCore<U>> core_;
  U value_;
};

template <class U>
class RecvBranch final : public Branch<U> {
 public:
  using Enroll = typename Branch<U>::Enroll;

  explicit RecvBranch(std::shared_ptr<ChanCore<U>> core)
      : core_(std::move(core)), slot_(std::make_shared<ValueSlot<U>>()) {}

  bool ready() override {
    std::lock_guard<std::mutex> lk(core_->m);
    while (!core_->senders.empty() && core_->senders.front().tok->synched())
      core_->senders.pop_front();
    return !core_->senders.empty();
  }

  bool fire(std::optional<U>& out) override {
    std::unique_lock<std::mutex> lk(core_->m);
    auto& q = core_->senders;
    for (auto it = q.begin(); it != q.end();) {
      auto r = it->tok->try_claim(0);
      if (r == CommitToken::ClaimResult::Won) {
        auto node = std::move(*it);
        q.erase(it);
        lk.unlock();
        out = std::move(node.value);
        publish_commit(*node.tok, node.branch);
        return true;
      }
      it = q.erase(it);  // Dead
    }
    return false;
  }

  Enroll enroll(const std::shared_ptr<CommitToken>& tok, int index) override {
    for (;;) {
      std::unique_lock<std::mutex> lk(core_->m);
      bool backoff = false;
      auto& q = core_->senders;
      for (auto it = q.begin(); it != q.end();) {
        if (it->tok->synched()) {
          it = q.erase(it);
          continue;
        }
        if (it->tok == tok) {
          ++it;
          continue;
        }
        if (!tok->try_tentative()) return Enroll::Lost;
        auto r = it->tok->try_claim(tok->seq);
        if (r == CommitToken::ClaimResult::Won) {
          auto node = std::move(*it);
          q.erase(it);
          tok->commit_tentative();
          lk.unlock();
          slot_->value = std::move(node.value);
          publish_commit(*node.tok, node.branch);
          publish_commit(*tok, index);
          return Enroll::SelfCommitted;
        }
        tok->abort_tentative();
        if (r == CommitToken::ClaimResult::Dead) {
          it = q.erase(it);
          continue;
        }
        backoff = true;
        break;
      }
      if (!backoff) {
        core_->receivers.push_back({tok, index, slot_});
        return Enroll::Waiting;
      }
      lk.unlock();
      std::this_thread::yield();
    }
  }

  U result() override { return std::move(*slot_->value); }

 private:
  std::shared_ptr<ChanCore<U>> core_;
  std::shared_ptr<ValueSlot<U>> slot_;
};

template <class T>
class AlwaysBranch final : public Branch<T> {
 public:
  using Enroll = typename Branch<T>::Enroll;

  explicit AlwaysBranch(T v) : value_(std::move(v)) {}

  bool ready() override { return true; }
  bool fire(std::optional<T>& out) override {
    out = value_;
    return true;
  }
  Enroll enroll(const std::shared_ptr<CommitToken>& tok, int index) override {
    if (!tok->try_tentative()) return Enroll::Lost;
    tok->commit_tentative();
    publish_commit(*tok, index);
    return Enroll::SelfCommitted;
  }
  T result() override { return value_; }

 private:
  T value_;
};

template <class T>
class NeverBranch final : public Branch<T> {
 public:
  using Enroll = typename Branch<T>::Enroll;

  bool ready() override { return false; }
  bool fire(std::optional<T>&) override { return false; }
  Enroll enroll(const std::shared_ptr<CommitToken>&, int) override {
    return Enroll::Waiting;
  }
  T result() override { throw FrameworkError("never event has no result"); }
};

class TimeoutBranch final : public Branch<Unit> {
 public:
  TimeoutBranch(VirtualClock* clock, std::int64_t deadline)
      : clock_(clock), deadline_(deadline) {}

  bool ready() override { return clock_->due(deadline_); }
  bool fire(std::optional<Unit>& out) override {
    if (!clock_->due(deadline_)) return false;
    out = Unit{};
    return true;
  }
  Enroll enroll(const std::shared_ptr<CommitToken>& tok, int index) override {
    if (clock_->due(deadline_)) {
      if (!tok->try_tentative()) return Enroll::Lost;
      tok->commit_tentative();
      publish_commit(*tok, index);
      return Enroll::SelfCommitted;
    }
    clock_->enroll(tok, index, deadline_);
    return Enroll::Waiting;
  }
  Unit result() override { return Unit{}; }

 private:
  VirtualClock* clock_;
  std::int64_t deadline_;
};

template <class A, class B>
class MappedBranch final : public Branch<B> {
 public:
  using Enroll = typename Branch<B>::Enroll;

  MappedBranch(std::unique_ptr<Branch<A>> inner,
               std::shared_ptr<const std::function<B(A)>> f)
      : inner_(std::move(inner)), f_(std::move(f)) {}

  bool ready() override { return inner_->ready(); }
  bool fire(std::optional<B>& out) override {
    std::optional<A> a;
    if (!inner_->fire(a)) return false;
    out = (*f_)(std::move(*a));
    return true;
  }
  Enroll enroll(const std::shared_ptr<CommitToken>& tok, int index) override {
    auto r = inner_->enroll(tok, index);
    return static_cast<Enroll>(r);
  }
  B result() override { return (*f_)(inner_->result()); }

 private:
  std::unique_ptr<Branch<A>> inner_;
  std::shared_ptr<const std::function<B(A)>> f_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Event trees.

template <class T>
struct EventNode {
  virtual ~EventNode() = default;
  virtual void expand(BranchList<T>& out) const = 0;
};

/// First-class synchronization descriptor: a tree of base
/// communications under wrappers and choices. Immutable; sync never
/// mutates it.
template <class T>
class Event {
 public:
  Event() : node_(nullptr) {}
  explicit Event(std::shared_ptr<const EventNode<T>> n) : node_(std::move(n)) {}

  BranchList<T> expand() const {
    BranchList<T> out;
    if (node_) node_->expand(out);
    return out;
  }

 private:
  std::shared_ptr<const EventNode<T>> node_;
};

namespace detail {

template <class U>
struct SendEvtNode final : EventNode<Unit> {
  Channel<U> ch;
  U value;
  SendEvtNode(Channel<U> c, U v) : ch(std::move(c)), value(std::move(v)) {}
  void expand(BranchList<Unit>& out) const override {
    out.push_back(std::make_unique<SendBranch<U>>(ch.core_ptr(), value));
  }
};

template <class U>
struct RecvEvtNode final : EventNode<U> {
  Channel<U> ch;
  explicit RecvEvtNode(Channel<U> c) : ch(std::move(c)) {}
  void expand(BranchList<U>& out) const override {
    out.push_back(std::make_unique<RecvBranch<U>>(ch.core_ptr()));
  }
};

template <class T>
struct ChooseNode final : EventNode<T> {
  std::vector<Event<T>> alts;
  explicit ChooseNode(std::vector<Event<T>> a) : alts(std::move(a)) {}
  void expand(BranchList<T>& out) const override {
    for (const auto& e : alts) {
      auto sub = e.expand();
      for (auto& b : sub) out.push_back(std::move(b));
    }
  }
};

template <class A, class B>
struct WrapEvtNode final : EventNode<B> {
  Event<A> inner;
  std::shared_ptr<const std::function<B(A)>> f;
  WrapEvtNode(Event<A> e, std::shared_ptr<const std::function<B(A)>> fn)
      : inner(std::move(e)), f(std::move(fn)) {}
  void expand(BranchList<B>& out) const override {
    auto sub = inner.expand();
    for (auto& b : sub)
      out.push_back(std::make_unique<MappedBranch<A, B>>(std::move(b), f));
  }
};

template <class T>
struct AlwaysEvtNode final : EventNode<T> {
  T value;
  explicit AlwaysEvtNode(T v) : value(std::move(v)) {}
  void expand(BranchList<T>& out) const override {
    out.push_back(std::make_unique<AlwaysBranch<T>>(value));
  }
};

template <class T>
struct NeverEvtNode final : EventNode<T> {
  void expand(BranchList<T>& out) const override {
    out.push_back(std::make_unique<NeverBranch<T>>());
  }
};

struct TimeoutEvtNode final : EventNode<Unit> {
  VirtualClock* clock;
  std::int64_t deadline;
  TimeoutEvtNode(VirtualClock* c, std::int64_t d) : clock(c), deadline(d) {}
  void expand(BranchList<Unit>& out) const override {
    out.push_back(std::make_unique<TimeoutBranch>(clock, deadline));
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Combinators.

template <class U>
Event<Unit> send_evt(Channel<U> c, U v) {
  return Event<Unit>(
      std::make_shared<detail::SendEvtNode<U>>(std::move(c), std::move(v)));
}

template <class U>
Event<U> recv_evt(Channel<U> c) {
  return Event<U>(std::make_shared<detail::RecvEvtNode<U>>(std::move(c)));
}

template <class T>
Event<T> choose(std::vector<Event<T>> alts) {
  return Event<T>(std::make_shared<detail::ChooseNode<T>>(std::move(alts)));
}

template <class A, class F>
auto wrap(Event<A> e, F f) {
  using R = std::invoke_result_t<F, A>;
  if constexpr (std::is_void_v<R>) {
    auto fn = std::make_shared<const std::function<Unit(A)>>(
        [g = std::move(f)](A a) {
          g(std::move(a));
          return Unit{};
        });
    return Event<Unit>(
        std::make_shared<detail::WrapEvtNode<A, Unit>>(std::move(e), fn));
  } else {
    auto fn = std::make_shared<const std::function<R(A)>>(std::move(f));
    return Event<R>(
        std::make_shared<detail::WrapEvtNode<A, R>>(std::move(e), fn));
  }
}

template <class T>
Event<T> always_evt(T v) {
  return Event<T>(std::make_shared<detail::AlwaysEvtNode<T>>(std::move(v)));
}

template <class T>
Event<T> never_evt() {
  return Event<T>(std::make_shared<detail::NeverEvtNode<T>>());
}

inline Event<Unit> timeout_evt(VirtualClock& clock, std::int64_t deadline_ms) {
  return Event<Unit>(
      std::make_shared<detail::TimeoutEvtNode>(&clock, deadline_ms));
}

// ---------------------------------------------------------------------------

/// Perform an event: block until exactly one base communication in the
/// tree commits, then return the committed value through its wrap
/// chain. Two-phase: poll every branch and commit a uniformly chosen
/// ready one; otherwise enroll a shared single-use token everywhere and
/// block until a partner claims it.
template <class T>
T sync(const Event<T>& e) {
  auto& rt = runtime();
  for (;;) {
    auto branches = e.expand();

    // Poll phase.
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < branches.size(); ++i)
      if (branches[i]->ready()) ready.push_back(i);
    if (!ready.empty()) {
      std::size_t i = ready[rt.pick(ready.size())];
      std::optional<T> out;
      if (branches[i]->fire(out)) return std::move(*out);
      continue;  // partner vanished under us; re-poll
    }

    // Enroll phase.
    auto tok = std::make_shared<CommitToken>();
    std::optional<std::size_t> self;
    bool stop = false;
    for (std::size_t i = 0; i < branches.size() && !stop; ++i) {
      switch (branches[i]->enroll(tok, static_cast<int>(i))) {
        case Branch<T>::Enroll::SelfCommitted:
          self = i;
          stop = true;
          break;
        case Branch<T>::Enroll::Lost:
          stop = true;
          break;
        case Branch<T>::Enroll::Waiting:
          break;
      }
    }
    if (self) return branches[*self]->result();

    int committed;
    {
      std::unique_lock<std::mutex> lk(tok->m);
      if (!tok->done) {
        if (Runtime::current_thread_registered()) {
          rt.active_add(-1);
          tok->counted_out = true;
        }
        tok->cv.wait(lk, [&] { return tok->done; });
      }
      committed = tok->branch;
    }
    return branches[committed]->result();
  }
}

/// Convenience rendezvous shorthands.
template <class U>
void send(Channel<U> c, U v) {
  sync(send_evt(std::move(c), std::move(v)));
}
template <class U>
U recv(Channel<U> c) {
  return sync(recv_evt(std::move(c)));
}

}  // namespace chanwin::cml
