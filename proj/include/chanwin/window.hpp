#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "chanwin/display.hpp"
#include "chanwin/resources.hpp"

namespace chanwin {

class Window;

/// Per-window handler: runs on its own thread with the window handle
/// and the channel carrying the window's messages in FIFO order.
using Handler = std::function<void(Window, cml::Channel<Msg>)>;

class WindowClass {
 public:
  WindowClass() = default;
  WindowClass(std::shared_ptr<DisplayCore> d, std::string name)
      : display_(std::move(d)), name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::shared_ptr<DisplayCore>& display() const { return display_; }

 private:
  std::shared_ptr<DisplayCore> display_;
  std::string name_;
};

class Window {
 public:
  Window() = default;
  Window(std::shared_ptr<DisplayCore> d, WindowId id)
      : display_(std::move(d)), id_(id) {}

  WindowId id() const { return id_; }
  std::string name() const { return display_->window_name(id_); }
  const std::shared_ptr<DisplayCore>& display() const { return display_; }
  bool valid() const { return display_ != nullptr; }
  bool live() const { return display_ && display_->is_window_live(id_); }

  void show(ShowStyle s = ShowStyle::SW_NORMAL) { display_->show(id_, s); }
  void update() { display_->update(id_); }
  void set_foreground() { display_->set_foreground(id_); }
  void move(int x, int y) { display_->move(id_, x, y); }
  void resize(int w, int h) { display_->resize(id_, w, h); }
  Rect client_rect() const { return display_->client_rect(id_); }
  void invalidate(const Rect& r) { display_->invalidate(id_, r); }

  void set_timer(int timer_id, std::int64_t period_ms) {
    display_->set_timer(id_, timer_id, period_ms);
  }
  void kill_timer(int timer_id) { display_->kill_timer(id_, timer_id); }

  /// Async post onto the system queue; never blocks on the handler.
  void send(const Msg& m) { display_->post(id_, m); }

  void destroy() { display_->destroy_window(id_); }

  /// Ends the message loop of this window's display with `code`.
  void quit(int code) { display_->post_quit(code); }

  std::optional<Menu> menu() const {
    auto p = display_->window_menu(id_);
    if (!p) return std::nullopt;
    return *std::static_pointer_cast<Menu>(p);
  }

  friend bool operator==(const Window& a, const Window& b) {
    return a.display_ == b.display_ && a.id_ == b.id_;
  }
  friend bool operator!=(const Window& a, const Window& b) { return !(a == b); }

 private:
  std::shared_ptr<DisplayCore> display_;
  WindowId id_ = 0;
};

// -- class registration -----------------------------------------------------

inline WindowClass register_class(const Instance& inst, const std::string& name,
                                  const Cursor& cursor, const Icon& icon,
                                  const Brush& brush,
                                  const std::set<ClassStyle>& styles = {}) {
  inst.display()->register_class(name, cursor.name(), icon.name(), brush.name(),
                                 styles);
  return WindowClass(inst.display(), name);
}

inline void unregister_class(const WindowClass& wc) {
  wc.display()->unregister_class(wc.name());
}

// -- window creation --------------------------------------------------------

struct CreateOptions {
  std::optional<int> x, y, w, h;
  std::optional<Menu> menu;
};

namespace detail {
inline DisplayCore::RawHandler wrap_handler(std::shared_ptr<DisplayCore> d,
                                            Handler h) {
  return [d = std::move(d), h = std::move(h)](WindowId id,
                                              cml::Channel<Msg> ch) {
    h(Window(d, id), std::move(ch));
  };
}
}  // namespace detail

inline Window create_window(const WindowClass& wc, const std::string& title,
                            const std::set<WindowStyle>& styles,
                            const CreateOptions& opts, Handler handler) {
  auto d = wc.display();
  DisplayCore::CreateParams p;
  p.class_name = wc.name();
  p.title = title;
  p.styles = styles;
  p.x = opts.x;
  p.y = opts.y;
  p.w = opts.w;
  p.h = opts.h;
  if (opts.menu) p.menu = std::make_shared<Menu>(*opts.menu);
  WindowId id = d->create_window(p, detail::wrap_handler(d, std::move(handler)));
  return Window(d, id);
}

inline Window create_child(const WindowClass& wc, const std::string& title,
                           const std::set<WindowStyle>& styles,
                           const Window& parent, std::optional<int> x,
                           std::optional<int> y, std::optional<int> w,
                           std::optional<int> h, int child_id,
                           Handler handler) {
  auto d = wc.display();
  DisplayCore::CreateParams p;
  p.class_name = wc.name();
  p.title = title;
  p.styles = styles;
  p.parent = parent.id();
  p.child_id = child_id;
  p.x = x;
  p.y = y;
  p.w = w;
  p.h = h;
  WindowId id = d->create_window(p, detail::wrap_handler(d, std::move(handler)));
  return Window(d, id);
}

// -- message loop and default processing ------------------------------------

/// Run the display's pump until quit; returns the exit code.
inline int msg_loop(const Window& main_window) {
  return main_window.display()->pump_until_quit();
}

/// Default processing for messages a handler does not consume.
inline void default_action(const Window& w, const Msg& m) {
  w.display()->default_proc(w.id(), m);
}

}  // namespace chanwin
