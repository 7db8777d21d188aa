#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "chanwin/cml.hpp"
#include "chanwin/input.hpp"
#include "chanwin/msg.hpp"
#include "chanwin/trace.hpp"

namespace chanwin {

using WindowId = std::uint64_t;

enum class ClassStyle { CS_HREDRAW, CS_VREDRAW };
enum class WindowStyle { WS_OVERLAPPEDWINDOW, WS_CHILD, WS_VISIBLE };
enum class ShowStyle { SW_NORMAL };

/// The simulated window system replacing the real one: window registry
/// with z-order, virtual clock with timers, system message queue,
/// input injection, draw-command trace, and default message
/// processing.
///
/// All state is behind one lock; operations are callable from any
/// thread and never wait on a handler. Handlers receive messages
/// through an unbounded per-window mailbox whose forwarder thread
/// performs the synchronous hand-off onto the window's channel, so one
/// slow handler cannot stall the pump.
class DisplayCore : public std::enable_shared_from_this<DisplayCore> {
 public:
  using RawHandler = std::function<void(WindowId, cml::Channel<Msg>)>;
  using IdleSource = std::function<bool()>;

  // -- class registry -------------------------------------------------------

  void register_class(const std::string& name, const std::string& cursor,
                      const std::string& icon, const std::string& brush,
                      const std::set<ClassStyle>& styles,
                      bool internal = false) {
    std::lock_guard<std::mutex> lk(mu_);
    if (name.empty()) throw FrameworkError("class name must be nonempty");
    if (classes_.count(name))
      throw FrameworkError("class already registered: " + name);
    classes_[name] = ClassRecord{name, cursor, icon, brush, styles, internal, 0};
  }

  void unregister_class(const std::string& name) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = classes_.find(name);
    if (it == classes_.end())
      throw FrameworkError("class not registered: " + name);
    if (it->second.live_windows > 0)
      throw FrameworkError("class has live windows: " + name);
    classes_.erase(it);
  }

  bool class_registered(const std::string& name) const {
    std::lock_guard<std::mutex> lk(mu_);
    return classes_.count(name) > 0;
  }

  std::set<ClassStyle> class_styles(const std::string& name) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = classes_.find(name);
    if (it == classes_.end())
      throw FrameworkError("class not registered: " + name);
    return it->second.styles;
  }

  std::size_t registered_class_count() const {
    std::lock_guard<std::mutex> lk(mu_);
    return classes_.size();
  }

  // -- window lifecycle -----------------------------------------------------

  struct CreateParams {
    std::string class_name;
    std::string title;
    std::set<WindowStyle> styles;
    std::optional<WindowId> parent;
    std::optional<int> child_id;
    std::optional<int> x, y, w, h;
    std::shared_ptr<void> menu;
  };

  WindowId create_window(const CreateParams& p, RawHandler handler) {
    std::shared_ptr<WindowRecord> rec;
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto cit = classes_.find(p.class_name);
      if (cit == classes_.end())
        throw FrameworkError("class not registered: " + p.class_name);

      rec = std::make_shared<WindowRecord>();
      rec->id = next_window_++;
      rec->name = "w" + std::to_string(rec->id);
      rec->class_name = p.class_name;
      rec->title = p.title;
      rec->styles = p.styles;
      rec->menu = p.menu;

      if (p.parent) {
        auto par = find_live(*p.parent, "parent");
        if (!p.child_id)
          throw FrameworkError("child window requires a child id");
        for (WindowId c : par->children) {
          auto& cr = windows_.at(c);
          if (cr->live && cr->child_id == p.child_id)
            throw FrameworkError("duplicate child id under parent: " +
                                 std::to_string(*p.child_id));
        }
        rec->parent = p.parent;
        rec->child_id = p.child_id;
        int x = p.x.value_or(0);
        int y = p.y.value_or(0);
        int w = p.w.value_or(par->rect.width());
        int h = p.h.value_or(par->rect.height());
        rec->rect = Rect{x, y, x + w, y + h};
        par->children.push_back(rec->id);
      } else {
        int x, y;
        if (p.x && p.y) {
          x = *p.x;
          y = *p.y;
        } else {
          // Deterministic stand-in for the shell's default placement:
          // the k-th defaulted window cascades to (64k, 64k).
          int k = ++defaulted_windows_;
          x = 64 * k;
          y = 64 * k;
        }
        int w = p.w.value_or(640);
        int h = p.h.value_or(480);
        rec->rect = Rect{x, y, x + w, y + h};
      }

      rec->mailbox = std::make_shared<cml::Mailbox<Msg>>();
      windows_[rec->id] = rec;
      cit->second.live_windows++;

      if (rec->styles.count(WindowStyle::WS_VISIBLE)) show_locked(*rec);
    }

    auto self = shared_from_this();
    auto mbox = rec->mailbox;
    auto ch = rec->channel;
    WindowId id = rec->id;

    // Forwarder: mailbox to synchronous channel, preserving FIFO.
    cml::spawn([self, mbox, ch] {
      while (auto m = mbox->pop_wait()) cml::send(ch, std::move(*m));
    });

    // Handler thread. An escaping exception marks only this window.
    cml::spawn([self, id, ch, h = std::move(handler)] {
      try {
        h(id, ch);
      } catch (const std::exception& e) {
        self->note_handler_error(id, e.what());
      } catch (...) {
        self->note_handler_error(id, "unknown exception");
      }
    });

    // WM_CREATE is always the first message on the channel.
    rec->mailbox->push(Msg{WmCreate{}});
    return id;
  }

  void destroy_window(WindowId id) {
    std::vector<std::shared_ptr<cml::Mailbox<Msg>>> finals;
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = windows_.find(id);
      if (it == windows_.end() || !it->second->live) return;  // idempotent
      auto rec = it->second;
      // Destroying a wrapped control takes the wrapper (and thus the
      // control, its child) down with it.
      if (rec->wrapper && is_live(*rec->wrapper))
        rec = windows_.at(*rec->wrapper);
      destroy_rec_locked(rec->id, finals);
    }
    for (auto& m : finals) m->push_final(Msg{WmDestroy{}});
    cml::runtime().poke();
  }

  // -- messaging ------------------------------------------------------------

  void post(WindowId id, const Msg& m) {
    if (is<WmQuit>(m))
      throw FrameworkError("WM_QUIT is a system-queue sentinel; use quit()");
    std::lock_guard<std::mutex> lk(mu_);
    find_live(id, "post target");
    enqueue_locked(QueueEntry::message(id, m));
  }

  void post_quit(int exit_code) {
    std::lock_guard<std::mutex> lk(mu_);
    if (quit_posted_) return;  // first exit code wins
    quit_posted_ = true;
    enqueue_locked(QueueEntry::quit(exit_code));
  }

  bool quit_posted() const {
    std::lock_guard<std::mutex> lk(mu_);
    return quit_posted_;
  }

  /// Run the pump: dequeue and deliver until the quit sentinel.
  /// At most one loop may be active.
  int pump_until_quit() {
    bool expected = false;
    if (!pump_active_.compare_exchange_strong(expected, true))
      throw FrameworkError("message loop already active");
    struct Reset {
      std::atomic<bool>& f;
      ~Reset() { f.store(false); }
    } reset{pump_active_};

    std::unique_lock<std::mutex> lk(mu_);
    for (;;) {
      if (!queue_.empty()) {
        QueueEntry e = std::move(queue_.front());
        queue_.pop_front();
        queue_size_.fetch_sub(1);
        if (e.type == QueueEntry::Type::Quit) return e.code;
        deliverable_size_.fetch_sub(1);
        dispatch_locked(e);
        continue;
      }
      if (idle_) {
        auto idle = idle_;
        lk.unlock();
        bool quiescent = cml::runtime().wait_quiescent_or(
            [this] { return queue_size_.load() > 0; });
        if (quiescent && queue_size_.load() == 0) {
          if (!idle()) {
            lk.lock();
            idle_ = nullptr;
            continue;
          }
        }
        lk.lock();
        continue;
      }
      queue_cv_.wait(lk, [this] { return !queue_.empty(); });
    }
  }

  void set_idle_source(IdleSource s) {
    std::lock_guard<std::mutex> lk(mu_);
    idle_ = std::move(s);
  }

  /// Dispatch whatever is queued right now (test helper; no blocking).
  void drain_queue() {
    std::lock_guard<std::mutex> lk(mu_);
    while (!queue_.empty()) {
      QueueEntry e = std::move(queue_.front());
      queue_.pop_front();
      queue_size_.fetch_sub(1);
      if (e.type == QueueEntry::Type::Quit) {
        // put it back; only the pump consumes quit
        queue_.push_front(std::move(e));
        queue_size_.fetch_add(1);
        return;
      }
      deliverable_size_.fetch_sub(1);
      dispatch_locked(e);
    }
  }

  /// Deliver everything deliverable and wait until all framework
  /// threads are blocked again. Test/harness helper.
  void settle() {
    for (;;) {
      drain_queue();
      bool q = cml::runtime().wait_quiescent_or(
          [this] { return pending_deliverable(); });
      if (q && !pending_deliverable()) return;
    }
  }

  // -- default processing ---------------------------------------------------

  void default_proc(WindowId id, const Msg& m) {
    if (const auto* p = std::get_if<WmPaint>(&m)) {
      std::lock_guard<std::mutex> lk(mu_);
      auto rec = find_live(id, "default_proc");
      trace_.append(CmdValidateRect{rec->name, p->invalid});
      rec->pending_invalid.reset();
      return;
    }
    if (is<WmClose>(m)) {
      destroy_window(id);
      return;
    }
    // everything else: no-op
  }

  // -- geometry / visibility ------------------------------------------------

  void show(WindowId id, ShowStyle) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "show");
    show_locked(*rec);
  }

  void update(WindowId id) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "update");
    if (rec->pending_invalid)
      rec->mailbox->push(Msg{WmPaint{*rec->pending_invalid}});
  }

  void set_foreground(WindowId id) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "setForeground");
    if (!rec->parent && rec->shown) {
      auto& z = zorder_;
      z.erase(std::remove(z.begin(), z.end(), id), z.end());
      z.insert(z.begin(), id);
    }
  }

  void move(WindowId id, int x, int y) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "move");
    if (rec->wrapper && is_live(*rec->wrapper)) rec = windows_.at(*rec->wrapper);
    int w = rec->rect.width(), h = rec->rect.height();
    rec->rect = Rect{x, y, x + w, y + h};
  }

  void resize(WindowId id, int w, int h) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "resize");
    if (rec->wrapper && is_live(*rec->wrapper)) rec = windows_.at(*rec->wrapper);
    resize_locked(*rec, w, h);
    if (rec->wrapped_control && is_live(*rec->wrapped_control))
      resize_locked(*windows_.at(*rec->wrapped_control), w, h);
  }

  Rect client_rect(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "getClientRect");
    return Rect{0, 0, rec->rect.width(), rec->rect.height()};
  }

  /// Absolute (screen) rectangle, accumulating parent offsets.
  Rect screen_rect(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "screen_rect");
    Rect r = rec->rect;
    auto p = rec->parent;
    while (p) {
      const auto& par = windows_.at(*p);
      r = r.translated(par->rect.left, par->rect.top);
      p = par->parent;
    }
    return r;
  }

  void invalidate(WindowId id, const Rect& r) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "invalidate");
    invalidate_locked(*rec, r);
  }

  // -- timers and the virtual clock -----------------------------------------

  void set_timer(WindowId id, int timer_id, std::int64_t period_ms) {
    std::lock_guard<std::mutex> lk(mu_);
    if (period_ms <= 0) throw FrameworkError("timer period must be positive");
    find_live(id, "set_timer");
    kill_timer_locked(id, timer_id);
    timers_.push_back(
        TimerRecord{id, timer_id, period_ms, clock_.now() + period_ms});
  }

  void kill_timer(WindowId id, int timer_id) {
    std::lock_guard<std::mutex> lk(mu_);
    kill_timer_locked(id, timer_id);  // idempotent
  }

  void advance_clock(std::int64_t delta_ms) {
    if (delta_ms < 0) throw FrameworkError("clock cannot go backwards");
    std::lock_guard<std::mutex> lk(mu_);
    advance_clock_locked(clock_.now() + delta_ms);
  }

  std::int64_t clock_ms() const { return clock_.now(); }
  cml::VirtualClock& clock() { return clock_; }

  // -- input injection ------------------------------------------------------

  void inject(const InputEvent& ev) {
    std::lock_guard<std::mutex> lk(mu_);
    if (ev.at_ms < clock_.now())
      throw FrameworkError("input event time precedes the clock");
    advance_clock_locked(ev.at_ms);

    using K = InputEvent::Kind;
    switch (ev.kind) {
      case K::Tick:
        return;
      case K::Resize: {
        WindowId id = id_by_name_locked(ev.window);
        auto rec = find_live(id, "resize target");
        if (rec->wrapper && is_live(*rec->wrapper))
          rec = windows_.at(*rec->wrapper);
        resize_locked(*rec, ev.w, ev.h);
        if (rec->wrapped_control && is_live(*rec->wrapped_control))
          resize_locked(*windows_.at(*rec->wrapped_control), ev.w, ev.h);
        return;
      }
      case K::Close: {
        WindowId id = id_by_name_locked(ev.window);
        find_live(id, "close target");
        enqueue_locked(QueueEntry::message(id, Msg{WmClose{}}));
        return;
      }
      case K::KeyDown:
      case K::Char: {
        if (zorder_.empty()) return;  // no foreground window; dropped
        WindowId id = zorder_.front();
        Msg m = ev.kind == K::KeyDown ? Msg{WmKeyDown{ev.code}}
                                      : Msg{WmChar{ev.code}};
        enqueue_locked(QueueEntry::message(id, m));
        return;
      }
      case K::MouseMove:
      case K::MouseDown:
      case K::MouseUp:
      case K::DblClick: {
        auto hit = hit_test_locked(ev.x, ev.y);
        if (!hit) return;  // outside every window; dropped
        auto [id, rx, ry] = *hit;
        Msg m;
        switch (ev.kind) {
          case K::MouseMove: m = WmMouseMove{rx, ry}; break;
          case K::MouseDown: m = WmLButtonDown{rx, ry}; break;
          case K::MouseUp: m = WmLButtonUp{rx, ry}; break;
          default: m = WmLButtonDblClk{rx, ry}; break;
        }
        enqueue_locked(QueueEntry::message(id, m));
        return;
      }
    }
  }

  // -- trace and introspection ----------------------------------------------

  Trace& trace() { return trace_; }

  void trace_notify(WindowId id, const std::string& text) {
    std::lock_guard<std::mutex> lk(mu_);
    trace_.append(CmdNotify{name_of_locked(id), text});
  }

  void note_handler_error(WindowId id, const std::string& what) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = windows_.find(id);
    if (it == windows_.end()) return;
    it->second->errored = true;
    it->second->mailbox->close();
    trace_.append(CmdError{it->second->name, what});
  }

  std::string window_name(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    return name_of_locked(id);
  }

  WindowId id_by_name(const std::string& name) const {
    std::lock_guard<std::mutex> lk(mu_);
    return id_by_name_locked(name);
  }

  bool is_window_live(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    return is_live(id);
  }

  bool is_window_errored(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = windows_.find(id);
    return it != windows_.end() && it->second->errored;
  }

  std::size_t live_window_count() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::size_t n = 0;
    for (const auto& [id, rec] : windows_)
      if (rec->live) ++n;
    return n;
  }

  /// Live top-level windows in creation order.
  std::vector<std::string> live_toplevel_names() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::vector<std::string> out;
    for (const auto& [id, rec] : windows_)
      if (rec->live && !rec->parent) out.push_back(rec->name);
    return out;
  }

  std::vector<WindowId> zorder() const {
    std::lock_guard<std::mutex> lk(mu_);
    return zorder_;
  }

  cml::Channel<Msg> handler_channel(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = windows_.find(id);
    if (it == windows_.end()) throw FrameworkError("unknown window");
    return it->second->channel;
  }

  std::shared_ptr<void> window_menu(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "menu_get");
    return rec->menu;
  }

  std::string class_brush(WindowId id) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = find_live(id, "class_brush");
    auto it = classes_.find(rec->class_name);
    return it == classes_.end() ? "white" : it->second.brush;
  }

  /// Wrapper-window bookkeeping for wrapped controls: geometry
  /// operations on `control` are mirrored onto `wrapper` so the two
  /// stay coincident.
  void link_wrapper(WindowId control, WindowId wrapper) {
    std::lock_guard<std::mutex> lk(mu_);
    windows_.at(control)->wrapper = wrapper;
    windows_.at(wrapper)->wrapped_control = control;
  }

  // Device-context leak accounting (see resources).
  std::atomic<int> live_window_dcs{0};
  std::atomic<int> live_memory_dcs{0};

 private:
  struct WindowRecord {
    WindowId id = 0;
    std::string name;
    std::string class_name;
    std::string title;
    std::set<WindowStyle> styles;
    std::optional<WindowId> parent;
    std::optional<int> child_id;
    std::vector<WindowId> children;
    Rect rect;
    bool shown = false;
    bool live = true;
    bool errored = false;
    std::optional<Rect> pending_invalid;
    bool paint_queued = false;
    std::shared_ptr<cml::Mailbox<Msg>> mailbox;
    cml::Channel<Msg> channel;
    std::shared_ptr<void> menu;
    std::optional<WindowId> wrapper;
    std::optional<WindowId> wrapped_control;
  };

  struct ClassRecord {
    std::string name;
    std::string cursor, icon, brush;
    std::set<ClassStyle> styles;
    bool internal = false;
    int live_windows = 0;
  };

  struct TimerRecord {
    WindowId window;
    int timer_id;
    std::int64_t period_ms;
    std::int64_t next_due_ms;
  };

  struct QueueEntry {
    enum class Type { Message, Paint, Quit };
    Type type;
    WindowId win = 0;
    Msg msg;
    int code = 0;

    static QueueEntry message(WindowId w, Msg m) {
      return QueueEntry{Type::Message, w, std::move(m), 0};
    }
    static QueueEntry paint(WindowId w) {
      return QueueEntry{Type::Paint, w, Msg{}, 0};
    }
    static QueueEntry quit(int code) {
      return QueueEntry{Type::Quit, 0, Msg{}, code};
    }
  };

  std::shared_ptr<WindowRecord> find_live(WindowId id,
                                          const char* who) const {
    auto it = windows_.find(id);
    if (it == windows_.end())
      throw FrameworkError(std::string(who) + ": unknown window");
    if (!it->second->live)
      throw FrameworkError(std::string(who) + ": window destroyed");
    return it->second;
  }

  bool is_live(WindowId id) const {
    auto it = windows_.find(id);
    return it != windows_.end() && it->second->live;
  }

  std::string name_of_locked(WindowId id) const {
    auto it = windows_.find(id);
    if (it == windows_.end()) throw FrameworkError("unknown window");
    return it->second->name;
  }

  WindowId id_by_name_locked(const std::string& name) const {
    for (const auto& [id, rec] : windows_)
      if (rec->name == name) return id;
    throw FrameworkError("unknown window name: " + name);
  }

  void enqueue_locked(QueueEntry e) {
    if (e.type != QueueEntry::Type::Quit) deliverable_size_.fetch_add(1);
    queue_.push_back(std::move(e));
    queue_size_.fetch_add(1);
    queue_cv_.notify_all();
    cml::runtime().poke();
  }

  // Lock-free view for quiescence predicates (the runtime holds its own
  // mutex while evaluating them, so they must not take mu_).
  bool pending_deliverable() const { return deliverable_size_.load() > 0; }

  void dispatch_locked(const QueueEntry& e) {
    auto it = windows_.find(e.win);
    if (it == windows_.end() || !it->second->live) return;
    auto& rec = it->second;
    switch (e.type) {
      case QueueEntry::Type::Message:
        rec->mailbox->push(e.msg);
        break;
      case QueueEntry::Type::Paint:
        rec->paint_queued = false;
        if (rec->pending_invalid)
          rec->mailbox->push(Msg{WmPaint{*rec->pending_invalid}});
        break;
      case QueueEntry::Type::Quit:
        break;
    }
  }

  void show_locked(WindowRecord& rec) {
    bool was_shown = rec.shown;
    rec.shown = true;
    if (!rec.parent) {
      auto& z = zorder_;
      z.erase(std::remove(z.begin(), z.end(), rec.id), z.end());
      z.insert(z.begin(), rec.id);
    }
    if (!was_shown)
      invalidate_locked(rec, Rect{0, 0, rec.rect.width(), rec.rect.height()});
  }

  void invalidate_locked(WindowRecord& rec, const Rect& r) {
    rec.pending_invalid =
        rec.pending_invalid ? rect_union(*rec.pending_invalid, r) : r;
    if (!rec.paint_queued) {
      rec.paint_queued = true;
      enqueue_locked(QueueEntry::paint(rec.id));
    }
  }

  void resize_locked(WindowRecord& rec, int w, int h) {
    rec.rect = Rect{rec.rect.left, rec.rect.top, rec.rect.left + w,
                    rec.rect.top + h};
    enqueue_locked(QueueEntry::message(rec.id, Msg{WmSize{w, h}}));
    auto cit = classes_.find(rec.class_name);
    if (cit != classes_.end() &&
        (cit->second.styles.count(ClassStyle::CS_HREDRAW) ||
         cit->second.styles.count(ClassStyle::CS_VREDRAW)))
      invalidate_locked(rec, Rect{0, 0, w, h});
  }

  void kill_timer_locked(WindowId id, int timer_id) {
    auto& t = timers_;
    t.erase(std::remove_if(t.begin(), t.end(),
                           [&](const TimerRecord& r) {
                             return r.window == id && r.timer_id == timer_id;
                           }),
            t.end());
  }

  void advance_clock_locked(std::int64_t target) {
    for (;;) {
      // earliest due timer at or before target; ties by (due, id, window)
      std::size_t best = timers_.size();
      for (std::size_t i = 0; i < timers_.size(); ++i) {
        const auto& t = timers_[i];
        if (t.next_due_ms > target) continue;
        if (best == timers_.size()) {
          best = i;
          continue;
        }
        const auto& b = timers_[best];
        if (t.next_due_ms < b.next_due_ms ||
            (t.next_due_ms == b.next_due_ms &&
             (t.timer_id < b.timer_id ||
              (t.timer_id == b.timer_id && t.window < b.window))))
          best = i;
      }
      if (best == timers_.size()) break;
      auto& tr = timers_[best];
      clock_.advance_to(tr.next_due_ms);
      enqueue_locked(QueueEntry::message(tr.window, Msg{WmTimer{tr.timer_id}}));
      tr.next_due_ms += tr.period_ms;
    }
    clock_.advance_to(target);
  }

  /// Topmost shown window under (x, y), recursing to the deepest child.
  /// Returns (window, point in that window's client coordinates).
  std::optional<std::tuple<WindowId, int, int>> hit_test_locked(int x,
                                                                int y) const {
    for (WindowId top : zorder_) {
      const auto& rec = windows_.at(top);
      if (!rec->rect.contains(x, y)) continue;
      WindowId cur = top;
      int rx = x - rec->rect.left;
      int ry = y - rec->rect.top;
      for (;;) {
        const auto& c = windows_.at(cur);
        bool descended = false;
        for (auto it = c->children.rbegin(); it != c->children.rend(); ++it) {
          const auto& ch = windows_.at(*it);
          if (ch->live && ch->shown && ch->rect.contains(rx, ry)) {
            rx -= ch->rect.left;
            ry -= ch->rect.top;
            cur = *it;
            descended = true;
            break;
          }
        }
        if (!descended) break;
      }
      return std::make_tuple(cur, rx, ry);
    }
    return std::nullopt;
  }

  void destroy_rec_locked(
      WindowId id, std::vector<std::shared_ptr<cml::Mailbox<Msg>>>& finals) {
    auto it = windows_.find(id);
    if (it == windows_.end() || !it->second->live) return;
    auto rec = it->second;

    // children first, depth-first
    auto kids = rec->children;
    for (WindowId c : kids) destroy_rec_locked(c, finals);

    // timers, queued messages, z-order
    auto& t = timers_;
    t.erase(std::remove_if(
                t.begin(), t.end(),
                [&](const TimerRecord& r) { return r.window == id; }),
            t.end());
    std::size_t removed = 0;
    auto& q = queue_;
    for (auto qi = q.begin(); qi != q.end();) {
      if (qi->type != QueueEntry::Type::Quit && qi->win == id) {
        qi = q.erase(qi);
        ++removed;
      } else {
        ++qi;
      }
    }
    queue_size_.fetch_sub(static_cast<long>(removed));
    deliverable_size_.fetch_sub(static_cast<long>(removed));
    zorder_.erase(std::remove(zorder_.begin(), zorder_.end(), id),
                  zorder_.end());
    if (rec->parent) {
      auto pit = windows_.find(*rec->parent);
      if (pit != windows_.end()) {
        auto& pc = pit->second->children;
        pc.erase(std::remove(pc.begin(), pc.end(), id), pc.end());
      }
    }

    rec->live = false;
    auto cit = classes_.find(rec->class_name);
    if (cit != classes_.end()) {
      cit->second.live_windows--;
      if (cit->second.internal && cit->second.live_windows == 0)
        classes_.erase(cit);
    }

    // WM_DESTROY is the final delivery; pushed after the lock drops.
    finals.push_back(rec->mailbox);
  }

  mutable std::mutex mu_;
  std::condition_variable queue_cv_;
  std::map<WindowId, std::shared_ptr<WindowRecord>> windows_;
  std::map<std::string, ClassRecord> classes_;
  std::vector<WindowId> zorder_;  // front = topmost
  std::deque<QueueEntry> queue_;
  std::atomic<long> queue_size_{0};
  std::atomic<long> deliverable_size_{0};
  std::vector<TimerRecord> timers_;
  cml::VirtualClock clock_;
  bool quit_posted_ = false;
  std::atomic<bool> pump_active_{false};
  IdleSource idle_;
  WindowId next_window_ = 1;
  int defaulted_windows_ = 0;
  Trace trace_;
};

}  // namespace chanwin
