#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "chanwin/cml/channel.hpp"

namespace chanwin::cml {

/// Deterministic time source for timeout events. Time only moves when
/// advanced explicitly; advancing commits every due timeout enrollment.
/// Must outlive any timeout event built against it.
class VirtualClock {
 public:
  std::int64_t now() const {
    std::lock_guard<std::mutex> lk(m_);
    return now_;
  }

  void advance_to(std::int64_t t) {
    std::vector<Waiter> due;
    {
      std::lock_guard<std::mutex> lk(m_);
      if (t <= now_) return;
      now_ = t;
      auto it = waiters_.begin();
      while (it != waiters_.end()) {
        if (it->tok->synched()) {
          it = waiters_.erase(it);
        } else if (it->deadline <= now_) {
          due.push_back(*it);
          it = waiters_.erase(it);
        } else {
          ++it;
        }
      }
    }
    for (auto& w : due) {
      if (w.tok->try_claim(0) == CommitToken::ClaimResult::Won)
        publish_commit(*w.tok, w.branch);
    }
  }

  void enroll(std::shared_ptr<CommitToken> tok, int branch,
              std::int64_t deadline) {
    std::lock_guard<std::mutex> lk(m_);
    waiters_.push_back(Waiter{std::move(tok), branch, deadline});
  }

  bool due(std::int64_t deadline) const { return now() >= deadline; }

 private:
  struct Waiter {
    std::shared_ptr<CommitToken> tok;
    int branch;
    std::int64_t deadline;
  };
  mutable std::mutex m_;
  std::int64_t now_ = 0;
  std::vector<Waiter> waiters_;
};

}  // namespace chanwin::cml
