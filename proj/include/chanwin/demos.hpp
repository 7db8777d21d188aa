#pragma once

#include <functional>
#include <map>
#include <string>

#include "chanwin/demos/bounce.hpp"
#include "chanwin/demos/quit7.hpp"
#include "chanwin/demos/two_button.hpp"

namespace chanwin::demos {

using DemoFn = std::function<int(const Instance&)>;

inline const std::map<std::string, DemoFn>& registry() {
  static const std::map<std::string, DemoFn> r = {
      {"bounce", bounce_winmain},
      {"two_button", two_button_winmain},
      {"quit7", quit7_winmain},
  };
  return r;
}

}  // namespace chanwin::demos
