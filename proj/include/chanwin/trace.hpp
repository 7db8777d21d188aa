#pragma once

#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "chanwin/geometry.hpp"

namespace chanwin {

// Append-only log of drawing operations; the observable output of the
// simulated display. Records are space-delimited uppercase-opcode
// lines, e.g. `BITBLT w1 79 66 158 131 smlnj.bmp 0 0 SRCCOPY`.

struct CmdFillRect {
  std::string window;
  Rect rect;
  std::string brush;
};
struct CmdBitBlt {
  std::string window;
  int x = 0, y = 0, w = 0, h = 0;
  std::string bitmap;
  int src_x = 0, src_y = 0;
  std::string rop;
};
struct CmdDrawIcon {
  std::string window;
  int x = 0, y = 0;
  std::string icon;
};
struct CmdValidateRect {
  std::string window;
  Rect rect;
};
struct CmdLabel {
  std::string window;
  std::string text;
};
struct CmdNotify {
  std::string window;
  std::string text;
};
struct CmdError {
  std::string window;
  std::string what;
};

using DrawCmd = std::variant<CmdFillRect, CmdBitBlt, CmdDrawIcon,
                             CmdValidateRect, CmdLabel, CmdNotify, CmdError>;

inline std::string to_text(const DrawCmd& c) {
  struct V {
    std::string operator()(const CmdFillRect& r) {
      return "FILLRECT " + r.window + " " + to_text(r.rect) + " " + r.brush;
    }
    std::string operator()(const CmdBitBlt& b) {
      return "BITBLT " + b.window + " " + std::to_string(b.x) + " " +
             std::to_string(b.y) + " " + std::to_string(b.w) + " " +
             std::to_string(b.h) + " " + b.bitmap + " " +
             std::to_string(b.src_x) + " " + std::to_string(b.src_y) + " " +
             b.rop;
    }
    std::string operator()(const CmdDrawIcon& d) {
      return "DRAWICON " + d.window + " " + std::to_string(d.x) + " " +
             std::to_string(d.y) + " " + d.icon;
    }
    std::string operator()(const CmdValidateRect& v) {
      return "VALIDATERECT " + v.window + " " + to_text(v.rect);
    }
    std::string operator()(const CmdLabel& l) {
      return "LABEL " + l.window + " " + l.text;
    }
    std::string operator()(const CmdNotify& n) {
      return "NOTIFY " + n.window + " " + n.text;
    }
    std::string operator()(const CmdError& e) {
      return "ERROR " + e.window + " " + e.what;
    }
    std::string to_text(const Rect& r) { return chanwin::to_text(r); }
  };
  return std::visit(V{}, c);
}

class Trace {
 public:
  void append(DrawCmd c) {
    std::lock_guard<std::mutex> lk(m_);
    cmds_.push_back(std::move(c));
  }

  std::vector<DrawCmd> commands() const {
    std::lock_guard<std::mutex> lk(m_);
    return cmds_;
  }

  std::vector<std::string> lines() const {
    std::lock_guard<std::mutex> lk(m_);
    std::vector<std::string> out;
    out.reserve(cmds_.size());
    for (const auto& c : cmds_) out.push_back(to_text(c));
    return out;
  }

  std::string text() const {
    std::string out;
    for (const auto& l : lines()) {
      out += l;
      out += '\n';
    }
    return out;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lk(m_);
    return cmds_.size();
  }

 private:
  mutable std::mutex m_;
  std::vector<DrawCmd> cmds_;
};

}  // namespace chanwin
