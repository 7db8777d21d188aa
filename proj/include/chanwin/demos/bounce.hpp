#pragma once

#include "chanwin/app.hpp"
#include "chanwin/dc.hpp"
#include "chanwin/window.hpp"

namespace chanwin::demos {

// Bouncing-logo demo: a timer-driven window that BitBlts a bitmap
// around its client area, reflecting off the walls. Draws at the
// current center first, then moves — so the first frame after a resize
// is at the exact center.

inline Handler bounce_handler(const Instance& inst) {
  return [inst](Window window, cml::Channel<Msg> ch) {
    constexpr int timerID = 1;
    constexpr int rate = 20;
    constexpr int moveR = 10;
    constexpr int xTotal = 158, yTotal = 131;
    constexpr int xRadius = 59, yRadius = 45;

    struct Args {
      int xS, yS, xC, yC, xM, yM;
      Bitmap b;
    };

    auto on_timer = [&](const Args& a) {
      auto hdc = DeviceContext::get(window);
      auto hdcMem = hdc.create_compatible();
      hdcMem.select(a.b);
      hdc.bit_blt(a.xC - xTotal / 2, a.yC - yTotal / 2, xTotal, yTotal,
                  hdcMem, 0, 0, RasterOp::SRCCOPY);
      hdc.release();
      hdcMem.del();
      int xC = a.xC + a.xM;
      int yC = a.yC + a.yM;
      int xM = (xC + xRadius >= a.xS || xC - xRadius <= 0) ? -a.xM : a.xM;
      int yM = (yC + yRadius >= a.yS || yC - yRadius <= 0) ? -a.yM : a.yM;
      return Args{a.xS, a.yS, xC, yC, xM, yM, a.b};
    };

    auto compute_args = [&](int x, int y, const Bitmap& b) {
      return Args{x, y, x / 2, y / 2, moveR, moveR, b};
    };

    // wait for WM_CREATE, then run the message loop
    for (;;) {
      Msg m = cml::recv(ch);
      if (is<WmCreate>(m)) break;
    }
    window.set_timer(timerID, rate);
    Args args{0, 0, 0, 0, 0, 0, Bitmap::load(inst, "smlnj.bmp")};
    for (;;) {
      Msg m = cml::recv(ch);
      if (const auto* s = std::get_if<WmSize>(&m)) {
        args = compute_args(s->width, s->height, args.b);
      } else if (is<WmDestroy>(m)) {
        window.kill_timer(timerID);
        args.b.destroy();
        window.quit(0);
        return;
      } else if (const auto* t = std::get_if<WmTimer>(&m)) {
        if (t->timer_id == timerID) args = on_timer(args);
      } else {
        default_action(window, m);
      }
    }
  };
}

inline int bounce_winmain(const Instance& inst) {
  auto c = register_class(inst, "BouncingSMLN", Cursor::arrow(),
                          Icon::application(), Brush::white(),
                          {ClassStyle::CS_HREDRAW, ClassStyle::CS_VREDRAW});
  auto w = create_window(c, "Bouncing SML/NJ",
                         {WindowStyle::WS_OVERLAPPEDWINDOW}, {},
                         bounce_handler(inst));
  int v = msg_loop(w);
  unregister_class(c);
  return v;
}

}  // namespace chanwin::demos
