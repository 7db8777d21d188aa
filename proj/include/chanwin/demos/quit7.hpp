#pragma once

#include "chanwin/app.hpp"
#include "chanwin/window.hpp"

namespace chanwin::demos {

/// Minimal lifecycle demo: the window destroys itself on WM_CREATE and
/// exits the message loop with status 7 from WM_DESTROY.
inline int quit7_winmain(const Instance& inst) {
  auto c = register_class(inst, "QuitSeven", Cursor::arrow(),
                          Icon::application(), Brush::white(), {});
  auto w = create_window(c, "Quit Seven", {WindowStyle::WS_OVERLAPPEDWINDOW},
                         {}, [](Window window, cml::Channel<Msg> ch) {
                           for (;;) {
                             Msg m = cml::recv(ch);
                             if (is<WmCreate>(m)) {
                               window.destroy();
                             } else if (is<WmDestroy>(m)) {
                               window.quit(7);
                               return;
                             } else {
                               default_action(window, m);
                             }
                           }
                         });
  int v = msg_loop(w);
  unregister_class(c);
  return v;
}

}  // namespace chanwin::demos
