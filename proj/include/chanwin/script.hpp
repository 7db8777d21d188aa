#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chanwin/display.hpp"
#include "chanwin/errors.hpp"
#include "chanwin/input.hpp"
#include "chanwin/resources.hpp"

namespace chanwin {

// Script grammar (one event per line, `#` starts a comment):
//   <at_ms> resize <win> <w> <h>
//   <at_ms> mouse_move|mouse_down|mouse_up|dbl_click <x> <y>
//   <at_ms> key_down|char <code>
//   <at_ms> close <win>
//   <at_ms> tick
// Events must be sorted by at_ms. Windows are named by creation order
// (w1, w2, ...).

namespace detail {

inline std::vector<std::string> script_tokens(const std::string& raw) {
  std::string line = raw;
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

inline std::int64_t script_int(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FrameworkError("script line " + std::to_string(lineno) +
                         ": expected an integer, got '" + s + "'");
  }
}

}  // namespace detail

/// Parses one script line; empty/comment-only lines yield nullopt.
inline std::optional<InputEvent> parse_script_line(const std::string& raw,
                                                   int lineno) {
  auto toks = detail::script_tokens(raw);
  if (toks.empty()) return std::nullopt;

  auto fail = [&](const std::string& why) -> FrameworkError {
    return FrameworkError("script line " + std::to_string(lineno) + ": " +
                          why);
  };
  auto want = [&](std::size_t n) {
    if (toks.size() != n)
      throw fail("wrong number of fields for '" + toks[1] + "'");
  };
  if (toks.size() < 2) throw fail("expected '<at_ms> <event> ...'");

  InputEvent ev;
  ev.at_ms = detail::script_int(toks[0], lineno);
  if (ev.at_ms < 0) throw fail("event time must be nonnegative");
  const std::string& op = toks[1];
  using K = InputEvent::Kind;

  if (op == "resize") {
    want(5);
    ev.kind = K::Resize;
    ev.window = toks[2];
    ev.w = static_cast<int>(detail::script_int(toks[3], lineno));
    ev.h = static_cast<int>(detail::script_int(toks[4], lineno));
  } else if (op == "mouse_move" || op == "mouse_down" || op == "mouse_up" ||
             op == "dbl_click") {
    want(4);
    ev.kind = op == "mouse_move"   ? K::MouseMove
              : op == "mouse_down" ? K::MouseDown
              : op == "mouse_up"   ? K::MouseUp
                                   : K::DblClick;
    ev.x = static_cast<int>(detail::script_int(toks[2], lineno));
    ev.y = static_cast<int>(detail::script_int(toks[3], lineno));
  } else if (op == "key_down" || op == "char") {
    want(3);
    ev.kind = op == "key_down" ? K::KeyDown : K::Char;
    ev.code = static_cast<int>(detail::script_int(toks[2], lineno));
  } else if (op == "close") {
    want(3);
    ev.kind = K::Close;
    ev.window = toks[2];
  } else if (op == "tick") {
    want(2);
    ev.kind = K::Tick;
  } else {
    throw fail("unknown event '" + op + "'");
  }
  return ev;
}

inline std::vector<InputEvent> parse_script(std::istream& in) {
  std::vector<InputEvent> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto ev = parse_script_line(line, lineno);
    if (!ev) continue;
    if (!out.empty() && ev->at_ms < out.back().at_ms)
      throw FrameworkError("script line " + std::to_string(lineno) +
                           ": events must be sorted by time");
    out.push_back(*ev);
  }
  return out;
}

/// Manifest grammar: `<kind> <name> [<width> <height>]` per line, with
/// `#` comments; kinds: bitmap (takes dimensions), icon, cursor, menu.
inline std::shared_ptr<ResourceTable> parse_manifest(std::istream& in) {
  auto table = std::make_shared<ResourceTable>();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::script_tokens(line);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) -> FrameworkError {
      return FrameworkError("manifest line " + std::to_string(lineno) + ": " +
                            why);
    };
    const std::string& kind = toks[0];
    if (kind == "bitmap") {
      if (toks.size() != 4) throw fail("bitmap takes name, width, height");
      table->add_bitmap(toks[1],
                        static_cast<int>(detail::script_int(toks[2], lineno)),
                        static_cast<int>(detail::script_int(toks[3], lineno)));
    } else if (kind == "icon" || kind == "cursor" || kind == "menu") {
      if (toks.size() != 2) throw fail(kind + " takes a name only");
      if (kind == "icon")
        table->add_icon(toks[1]);
      else if (kind == "cursor")
        table->add_cursor(toks[1]);
      else
        table->add_menu(toks[1]);
    } else {
      throw fail("unknown resource kind '" + kind + "'");
    }
  }
  return table;
}

/// Resources every demo can assume without a manifest file.
inline std::shared_ptr<ResourceTable> default_resources() {
  auto t = std::make_shared<ResourceTable>();
  t->add_bitmap("smlnj.bmp", 158, 131);
  return t;
}

/// Feeds script events from the pump's idle points, so each event is
/// injected only when every handler has gone quiet — making the
/// delivery order, and thus the trace, deterministic. After the last
/// event it advances the clock to `max_ms`, then winds the application
/// down: closes remaining top-level windows one idle step at a time
/// and finally posts quit(0) if no handler has quit already.
class ScriptFeeder {
 public:
  ScriptFeeder(std::shared_ptr<DisplayCore> d, std::vector<InputEvent> events,
               std::int64_t max_ms)
      : display_(std::move(d)), events_(std::move(events)), max_ms_(max_ms) {}

  /// Install as the pump's idle source and return a callable for it.
  void install() {
    auto self = std::make_shared<ScriptFeeder>(*this);
    display_->set_idle_source([self] { return self->step(); });
  }

  bool step() {
    if (next_ < events_.size()) {
      display_->inject(events_[next_++]);
      return true;
    }
    if (!advanced_) {
      advanced_ = true;
      if (max_ms_ > display_->clock_ms())
        display_->advance_clock(max_ms_ - display_->clock_ms());
      return true;
    }
    auto tops = display_->live_toplevel_names();
    if (!tops.empty()) {
      InputEvent ev;
      ev.at_ms = display_->clock_ms();
      ev.kind = InputEvent::Kind::Close;
      ev.window = tops.front();
      display_->inject(ev);
      return true;
    }
    if (!display_->quit_posted()) display_->post_quit(0);
    return false;
  }

 private:
  std::shared_ptr<DisplayCore> display_;
  std::vector<InputEvent> events_;
  std::int64_t max_ms_;
  std::size_t next_ = 0;
  bool advanced_ = false;
};

/// Interactive alternative to ScriptFeeder: reads script-grammar lines
/// from a stream (typically stdin) at idle points. Same injection code
/// path; `quit` or end of input winds down like the scripted mode.
class InteractiveFeeder {
 public:
  InteractiveFeeder(std::shared_ptr<DisplayCore> d, std::istream& in)
      : display_(std::move(d)), in_(&in) {}

  void install() {
    auto self = std::make_shared<InteractiveFeeder>(*this);
    display_->set_idle_source([self] { return self->step(); });
  }

  bool step() {
    std::string line;
    while (!eof_) {
      if (!std::getline(*in_, line)) {
        eof_ = true;
        break;
      }
      ++lineno_;
      if (detail::script_tokens(line).size() == 1 &&
          detail::script_tokens(line)[0] == "quit") {
        eof_ = true;
        break;
      }
      auto ev = parse_script_line(line, lineno_);
      if (!ev) continue;
      if (ev->at_ms < display_->clock_ms())
        ev->at_ms = display_->clock_ms();  // never rewind interactively
      display_->inject(*ev);
      return true;
    }
    auto tops = display_->live_toplevel_names();
    if (!tops.empty()) {
      InputEvent ev;
      ev.at_ms = display_->clock_ms();
      ev.kind = InputEvent::Kind::Close;
      ev.window = tops.front();
      display_->inject(ev);
      return true;
    }
    if (!display_->quit_posted()) display_->post_quit(0);
    return false;
  }

 private:
  std::shared_ptr<DisplayCore> display_;
  std::istream* in_;
  int lineno_ = 0;
  bool eof_ = false;
};

}  // namespace chanwin
