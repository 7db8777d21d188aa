#pragma once

#include <string>
#include <variant>

#include "chanwin/geometry.hpp"

namespace chanwin {

// Message algebra delivered on per-window channels. WM_QUIT is a
// system-queue sentinel only and never appears on a window channel.

struct WmCreate {};
struct WmSize {
  int width = 0;
  int height = 0;
};
struct WmPaint {
  Rect invalid;
};
struct WmDestroy {};
struct WmTimer {
  int timer_id = 0;
};
struct WmMouseMove {
  int x = 0, y = 0;
};
struct WmLButtonDown {
  int x = 0, y = 0;
};
struct WmLButtonUp {
  int x = 0, y = 0;
};
struct WmLButtonDblClk {
  int x = 0, y = 0;
};
struct WmKeyDown {
  int key_code = 0;
};
struct WmChar {
  int code_point = 0;
};
struct WmClose {};
struct WmQuit {
  int exit_code = 0;
};

using Msg = std::variant<WmCreate, WmSize, WmPaint, WmDestroy, WmTimer,
                         WmMouseMove, WmLButtonDown, WmLButtonUp,
                         WmLButtonDblClk, WmKeyDown, WmChar, WmClose, WmQuit>;

template <class M>
bool is(const Msg& m) {
  return std::holds_alternative<M>(m);
}

/// Canonical text form used in trace files, e.g. `WM_SIZE 400 300`.
inline std::string to_text(const Msg& m) {
  struct V {
    std::string operator()(const WmCreate&) { return "WM_CREATE"; }
    std::string operator()(const WmSize& s) {
      return "WM_SIZE " + std::to_string(s.width) + " " +
             std::to_string(s.height);
    }
    std::string operator()(const WmPaint& p) {
      return "WM_PAINT " + to_text(p.invalid);
    }
    std::string operator()(const WmDestroy&) { return "WM_DESTROY"; }
    std::string operator()(const WmTimer& t) {
      return "WM_TIMER " + std::to_string(t.timer_id);
    }
    std::string operator()(const WmMouseMove& e) {
      return "WM_MOUSEMOVE " + xy(e.x, e.y);
    }
    std::string operator()(const WmLButtonDown& e) {
      return "WM_LBUTTONDOWN " + xy(e.x, e.y);
    }
    std::string operator()(const WmLButtonUp& e) {
      return "WM_LBUTTONUP " + xy(e.x, e.y);
    }
    std::string operator()(const WmLButtonDblClk& e) {
      return "WM_LBUTTONDBLCLK " + xy(e.x, e.y);
    }
    std::string operator()(const WmKeyDown& e) {
      return "WM_KEYDOWN " + std::to_string(e.key_code);
    }
    std::string operator()(const WmChar& e) {
      return "WM_CHAR " + std::to_string(e.code_point);
    }
    std::string operator()(const WmClose&) { return "WM_CLOSE"; }
    std::string operator()(const WmQuit& q) {
      return "WM_QUIT " + std::to_string(q.exit_code);
    }
    static std::string xy(int x, int y) {
      return std::to_string(x) + " " + std::to_string(y);
    }
    std::string to_text(const Rect& r) { return chanwin::to_text(r); }
  };
  return std::visit(V{}, m);
}

}  // namespace chanwin
