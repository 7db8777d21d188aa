#pragma once

#include <string>

#include "chanwin/app.hpp"
#include "chanwin/controls.hpp"
#include "chanwin/window.hpp"

namespace chanwin::demos {

/// Composite-control notification: which button was clicked.
struct CompositeNotify {
  int button = 0;
};

/// A custom control built from two pushbuttons. Its controller thread
/// handles window messages and the subcontrols' notification events in
/// a single choice, forwarding clicks as CLICKED 1 / CLICKED 2 on its
/// own notification channel; double-clicks are swallowed.
class TwoButton {
 public:
  static TwoButton create(int x, int y, int w, int h, const Instance& inst,
                          const Window& parent) {
    auto d = inst.display();
    detail::ensure_internal_class(d, "chanwin.twobutton");
    WindowClass wc(d, "chanwin.twobutton");

    cml::Channel<CompositeNotify> notifyCh;
    int bw = (w - 12) / 2;
    Window win = create_child(
        wc, "", {WindowStyle::WS_CHILD, WindowStyle::WS_VISIBLE}, parent, x,
        y, w, h, detail::next_control_child_id(),
        [inst, notifyCh, bw, h](Window window, cml::Channel<Msg> ch) {
          PushButton b1 =
              PushButton::create("1", 4, 4, bw, h - 8, inst, window);
          PushButton b2 =
              PushButton::create("2", 8 + bw, 4, bw, h - 8, inst, window);
          bool done = false;
          auto handle_message = [&](const Msg& m) {
            if (is<WmDestroy>(m))
              done = true;
            else
              default_action(window, m);
          };
          while (!done) {
            cml::sync(cml::choose<cml::Unit>(
                {cml::wrap(cml::recv_evt(ch), handle_message),
                 cml::wrap(b1.notify_evt(),
                           [&](ButtonNotify n) {
                             if (n == ButtonNotify::BN_CLICKED)
                               cml::send(notifyCh, CompositeNotify{1});
                           }),
                 cml::wrap(b2.notify_evt(), [&](ButtonNotify n) {
                   if (n == ButtonNotify::BN_CLICKED)
                     cml::send(notifyCh, CompositeNotify{2});
                 })}));
          }
        });

    TwoButton t;
    t.window_ = win;
    t.notify_ = notifyCh;
    return t;
  }

  cml::Event<CompositeNotify> notify_evt() const {
    return cml::recv_evt(notify_);
  }

  Window window_of() const { return window_; }

 private:
  Window window_;
  cml::Channel<CompositeNotify> notify_;
};

/// Demo: a main window hosting the two-button composite; composite
/// notifications are logged to the trace as `NOTIFY w1 CLICKED n`.
inline int two_button_winmain(const Instance& inst) {
  auto c = register_class(inst, "TwoButtonDemo", Cursor::arrow(),
                          Icon::application(), Brush::white(), {});
  auto w = create_window(
      c, "Two Buttons", {WindowStyle::WS_OVERLAPPEDWINDOW},
      CreateOptions{0, 0, 400, 300, std::nullopt},
      [inst](Window window, cml::Channel<Msg> ch) {
        TwoButton tb = TwoButton::create(10, 10, 220, 70, inst, window);
        bool done = false;
        while (!done) {
          cml::sync(cml::choose<cml::Unit>(
              {cml::wrap(cml::recv_evt(ch),
                         [&](const Msg& m) {
                           if (is<WmDestroy>(m)) {
                             done = true;
                             window.quit(0);
                           } else {
                             default_action(window, m);
                           }
                         }),
               cml::wrap(tb.notify_evt(), [&](CompositeNotify n) {
                 window.display()->trace_notify(
                     window.id(), "CLICKED " + std::to_string(n.button));
               })}));
        }
      });
  w.show();
  int v = msg_loop(w);
  unregister_class(c);
  return v;
}

}  // namespace chanwin::demos
