#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chanwin/display.hpp"
#include "chanwin/errors.hpp"

namespace chanwin {

/// Dimensions for loadable resources, read from a line-delimited
/// manifest of `kind name width height` records
/// (e.g. `bitmap smlnj.bmp 158 131`).
class ResourceTable {
 public:
  void add_bitmap(const std::string& name, int w, int h) {
    if (w <= 0 || h <= 0)
      throw FrameworkError("bitmap dimensions must be positive: " + name);
    bitmaps_[name] = {w, h};
  }
  void add_menu(const std::string& name) { menus_.insert(name); }
  void add_icon(const std::string& name) { icons_.insert(name); }
  void add_cursor(const std::string& name) { cursors_.insert(name); }

  std::pair<int, int> bitmap_size(const std::string& name) const {
    auto it = bitmaps_.find(name);
    if (it == bitmaps_.end())
      throw FrameworkError("unknown bitmap resource: " + name);
    return it->second;
  }
  bool has_menu(const std::string& name) const { return menus_.count(name); }
  bool has_icon(const std::string& name) const { return icons_.count(name); }
  bool has_cursor(const std::string& name) const {
    return cursors_.count(name);
  }

 private:
  std::map<std::string, std::pair<int, int>> bitmaps_;
  std::set<std::string> menus_, icons_, cursors_;
};

/// The application handle: one per doit invocation. Carries the display
/// coordinator and the resource manifest.
class Instance {
 public:
  Instance() = default;
  Instance(std::shared_ptr<DisplayCore> d, std::shared_ptr<ResourceTable> r)
      : display_(std::move(d)), resources_(std::move(r)) {}

  const std::shared_ptr<DisplayCore>& display() const { return display_; }
  const ResourceTable& resources() const { return *resources_; }

 private:
  std::shared_ptr<DisplayCore> display_;
  std::shared_ptr<ResourceTable> resources_;
};

// -- named resources --------------------------------------------------------

class Icon {
 public:
  static Icon application() { return Icon("application", true); }
  static Icon hand() { return Icon("hand", true); }
  static Icon question() { return Icon("question", true); }
  static Icon exclamation() { return Icon("exclamation", true); }
  static Icon asterisk() { return Icon("asterisk", true); }

  static Icon load(const Instance& inst, const std::string& name) {
    if (!inst.resources().has_icon(name))
      throw FrameworkError("unknown icon resource: " + name);
    return Icon(name, false);
  }

  const std::string& name() const { return name_; }
  bool builtin() const { return builtin_; }

 private:
  Icon(std::string n, bool b) : name_(std::move(n)), builtin_(b) {}
  std::string name_;
  bool builtin_;
};

class Cursor {
 public:
  static Cursor arrow() { return Cursor("arrow", true); }
  static Cursor load(const Instance& inst, const std::string& name) {
    if (!inst.resources().has_cursor(name))
      throw FrameworkError("unknown cursor resource: " + name);
    return Cursor(name, false);
  }
  const std::string& name() const { return name_; }

 private:
  Cursor(std::string n, bool b) : name_(std::move(n)), builtin_(b) {}
  std::string name_;
  bool builtin_;
};

class Brush {
 public:
  static Brush white() { return Brush("white"); }
  const std::string& name() const { return name_; }

 private:
  explicit Brush(std::string n) : name_(std::move(n)) {}
  std::string name_;
};

/// Bitmap: name and dimensions only; the observable contract is the
/// BitBlt trace, so pixel data carries nothing.
class Bitmap {
 public:
  static Bitmap load(const Instance& inst, const std::string& name) {
    auto [w, h] = inst.resources().bitmap_size(name);
    Bitmap b;
    b.core_ = std::make_shared<Core>(Core{name, w, h, true});
    return b;
  }

  const std::string& name() const { return live_core().name; }
  int width() const { return live_core().width; }
  int height() const { return live_core().height; }
  bool alive() const { return core_ && core_->alive; }

  void destroy() {
    if (core_) core_->alive = false;
  }

 private:
  struct Core {
    std::string name;
    int width, height;
    bool alive;
  };
  const Core& live_core() const {
    if (!core_ || !core_->alive) throw FrameworkError("bitmap deleted");
    return *core_;
  }
  std::shared_ptr<Core> core_;
  friend class DeviceContext;
};

// -- menus ------------------------------------------------------------------

/// Structural menus: bars and popups built from command items and
/// submenus. Editing is observationally pure (no trace entries, no
/// messages); menus do not render or generate commands here.
class Menu {
 public:
  struct Item {
    int command_id;
    std::string label;
  };
  struct Submenu {
    std::shared_ptr<Menu> menu;
    std::string label;
  };
  using Entry = std::variant<Item, Submenu>;

  static Menu create() { return Menu(Kind::Bar); }
  static Menu create_popup() { return Menu(Kind::Popup); }

  static Menu load(const Instance& inst, const std::string& name) {
    if (!inst.resources().has_menu(name))
      throw FrameworkError("unknown menu resource: " + name);
    Menu m(Kind::Bar);
    m.core_->name = name;
    return m;
  }

  void append_item(int command_id, const std::string& label) {
    auto& c = live();
    if (!c.command_ids.insert(command_id).second)
      throw FrameworkError("duplicate menu command id: " +
                           std::to_string(command_id));
    c.entries.push_back(Item{command_id, label});
  }

  void append_popup(const Menu& sub, const std::string& label) {
    sub.live();
    live().entries.push_back(Submenu{std::make_shared<Menu>(sub), label});
  }

  void destroy() { live().alive = false; }

  bool is_popup() const { return live().kind == Kind::Popup; }
  const std::vector<Entry>& entries() const { return live().entries; }
  const std::string& name() const { return live().name; }

  friend bool operator==(const Menu& a, const Menu& b) {
    return a.core_ == b.core_;
  }

 private:
  enum class Kind { Bar, Popup };
  struct Core {
    Kind kind;
    std::string name;
    std::vector<Entry> entries;
    std::set<int> command_ids;
    bool alive = true;
  };
  explicit Menu(Kind k) : core_(std::make_shared<Core>()) { core_->kind = k; }
  Core& live() const {
    if (!core_->alive) throw FrameworkError("menu destroyed");
    return *core_;
  }
  std::shared_ptr<Core> core_;
};

}  // namespace chanwin
