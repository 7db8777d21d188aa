#pragma once

#include <memory>
#include <string>
#include <thread>
#include <utility>

#include "chanwin/resources.hpp"
#include "chanwin/window.hpp"

namespace chanwin {

enum class RasterOp { SRCCOPY };

inline const char* to_text(RasterOp op) {
  switch (op) {
    case RasterOp::SRCCOPY: return "SRCCOPY";
  }
  return "?";
}

/// Drawing handle. Window DCs are obtained with get() and emit trace
/// records for the window; memory DCs hold a selected bitmap and act
/// as BitBlt sources. A DC is owned by the thread that created it and
/// must be released/deleted by that thread; use after release is an
/// error (the leak counters on DisplayCore catch forgotten releases).
class DeviceContext {
 public:
  DeviceContext() = default;

  static DeviceContext get(const Window& w) {
    DeviceContext dc;
    dc.core_ = std::make_shared<Core>();
    dc.core_->display = w.display();
    dc.core_->window = w.id();
    dc.core_->is_window_dc = true;
    dc.core_->owner = std::this_thread::get_id();
    w.display()->live_window_dcs.fetch_add(1);
    return dc;
  }

  /// Memory DC compatible with this one.
  DeviceContext create_compatible() const {
    auto& c = live("createCompatibleDC");
    DeviceContext dc;
    dc.core_ = std::make_shared<Core>();
    dc.core_->display = c.display;
    dc.core_->is_window_dc = false;
    dc.core_->owner = std::this_thread::get_id();
    c.display->live_memory_dcs.fetch_add(1);
    return dc;
  }

  void release() {
    auto& c = live("releaseDC");
    if (!c.is_window_dc)
      throw FrameworkError("releaseDC on a memory DC; use deleteDC");
    check_owner(c, "releaseDC");
    c.alive = false;
    c.display->live_window_dcs.fetch_sub(1);
  }

  void del() {
    auto& c = live("deleteDC");
    if (c.is_window_dc)
      throw FrameworkError("deleteDC on a window DC; use releaseDC");
    check_owner(c, "deleteDC");
    c.alive = false;
    c.display->live_memory_dcs.fetch_sub(1);
  }

  /// Select a bitmap into a memory DC; returns the previous selection.
  Bitmap select(const Bitmap& b) {
    auto& c = live("selectObject");
    if (c.is_window_dc)
      throw FrameworkError("selectObject: bitmaps select into memory DCs");
    check_owner(c, "selectObject");
    if (!b.alive()) throw FrameworkError("selectObject: bitmap deleted");
    Bitmap prev = c.selected;
    c.selected = b;
    return prev;
  }

  void fill_rect(const Rect& r, const Brush& brush) {
    auto& c = live("fillRect");
    if (!c.is_window_dc)
      throw FrameworkError("fillRect needs a window DC");
    check_owner(c, "fillRect");
    c.display->trace().append(
        CmdFillRect{c.display->window_name(c.window), r, brush.name()});
  }

  void draw_icon(int x, int y, const Icon& icon) {
    auto& c = live("drawIcon");
    if (!c.is_window_dc) throw FrameworkError("drawIcon needs a window DC");
    check_owner(c, "drawIcon");
    c.display->trace().append(
        CmdDrawIcon{c.display->window_name(c.window), x, y, icon.name()});
  }

  void draw_label(const std::string& text) {
    auto& c = live("drawLabel");
    if (!c.is_window_dc) throw FrameworkError("drawLabel needs a window DC");
    check_owner(c, "drawLabel");
    c.display->trace().append(
        CmdLabel{c.display->window_name(c.window), text});
  }

  /// Copy from a memory DC's selected bitmap into this window DC.
  void bit_blt(int x, int y, int w, int h, const DeviceContext& src, int src_x,
               int src_y, RasterOp op) {
    auto& c = live("bitBlt dest");
    if (!c.is_window_dc) throw FrameworkError("bitBlt: dest must be a window DC");
    check_owner(c, "bitBlt");
    auto& s = src.live("bitBlt source");
    if (s.is_window_dc)
      throw FrameworkError("bitBlt: source must be a memory DC");
    if (!s.selected.alive())
      throw FrameworkError("bitBlt: source DC has no selected bitmap");
    c.display->trace().append(CmdBitBlt{c.display->window_name(c.window), x, y,
                                        w, h, s.selected.name(), src_x, src_y,
                                        to_text(op)});
  }

  bool alive() const { return core_ && core_->alive; }

 private:
  struct Core {
    std::shared_ptr<DisplayCore> display;
    WindowId window = 0;
    bool is_window_dc = false;
    bool alive = true;
    std::thread::id owner;
    Bitmap selected;
  };

  Core& live(const char* who) const {
    if (!core_ || !core_->alive)
      throw FrameworkError(std::string(who) + ": device context released");
    return *core_;
  }

  static void check_owner(const Core& c, const char* who) {
    if (c.owner != std::this_thread::get_id())
      throw FrameworkError(std::string(who) +
                           ": device context used off its owning thread");
  }

  std::shared_ptr<Core> core_;
};

}  // namespace chanwin
