#pragma once

#include <cstdint>
#include <string>

namespace chanwin {

/// Scripted input record. Point-addressed kinds (mouse) are routed by
/// hit-testing; window-addressed kinds (resize, close) name the target
/// window by creation order (`w1`, `w2`, ...). `tick` only advances the
/// virtual clock.
struct InputEvent {
  enum class Kind {
    MouseMove,
    MouseDown,
    MouseUp,
    DblClick,
    KeyDown,
    Char,
    Close,
    Resize,
    Tick,
  };

  std::int64_t at_ms = 0;
  Kind kind = Kind::Tick;
  std::string window;  // resize/close
  int x = 0, y = 0;    // mouse coords
  int code = 0;        // key_down / char
  int w = 0, h = 0;    // resize
};

inline const char* kind_name(InputEvent::Kind k) {
  switch (k) {
    case InputEvent::Kind::MouseMove: return "mouse_move";
    case InputEvent::Kind::MouseDown: return "mouse_down";
    case InputEvent::Kind::MouseUp: return "mouse_up";
    case InputEvent::Kind::DblClick: return "dbl_click";
    case InputEvent::Kind::KeyDown: return "key_down";
    case InputEvent::Kind::Char: return "char";
    case InputEvent::Kind::Close: return "close";
    case InputEvent::Kind::Resize: return "resize";
    case InputEvent::Kind::Tick: return "tick";
  }
  return "?";
}

}  // namespace chanwin
