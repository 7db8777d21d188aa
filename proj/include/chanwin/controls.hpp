#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "chanwin/dc.hpp"
#include "chanwin/window.hpp"

namespace chanwin {

// Predefined controls. Each control is a pair of windows: a transparent
// wrapper child of the caller's parent, plus the control window filling
// the wrapper. Geometry and destruction applied to the control window
// redirect to the wrapper so the two stay coincident. Notifications are
// queued to a per-control mailbox whose forwarder thread performs the
// synchronous channel send, so mutating operations never block the
// caller; a consumer must eventually sync on notifyEvt or that thread
// stays blocked.

enum class ButtonNotify { BN_CLICKED, BN_DOUBLECLICKED };

inline const char* to_text(ButtonNotify n) {
  switch (n) {
    case ButtonNotify::BN_CLICKED: return "BN_CLICKED";
    case ButtonNotify::BN_DOUBLECLICKED: return "BN_DOUBLECLICKED";
  }
  return "?";
}

enum class EditNotify {
  EN_CHANGE,
  EN_ERRSPACE,
  EN_HSCROLL,
  EN_KILLFOCUS,
  EN_MAXTEXT,
  EN_SETFOCUS,
  EN_UPDATE,
  EN_VSCROLL,
};

inline const char* to_text(EditNotify n) {
  switch (n) {
    case EditNotify::EN_CHANGE: return "EN_CHANGE";
    case EditNotify::EN_ERRSPACE: return "EN_ERRSPACE";
    case EditNotify::EN_HSCROLL: return "EN_HSCROLL";
    case EditNotify::EN_KILLFOCUS: return "EN_KILLFOCUS";
    case EditNotify::EN_MAXTEXT: return "EN_MAXTEXT";
    case EditNotify::EN_SETFOCUS: return "EN_SETFOCUS";
    case EditNotify::EN_UPDATE: return "EN_UPDATE";
    case EditNotify::EN_VSCROLL: return "EN_VSCROLL";
  }
  return "?";
}

namespace detail {

// Framework-owned window classes; auto-unregistered once no windows of
// the class remain alive.
inline void ensure_internal_class(const std::shared_ptr<DisplayCore>& d,
                                  const std::string& name) {
  if (d->class_registered(name)) return;
  try {
    d->register_class(name, "arrow", "application", "white", {},
                      /*internal=*/true);
  } catch (const FrameworkError&) {
    // lost a registration race; the class exists, which is all we need
  }
}

inline int next_control_child_id() {
  static std::atomic<int> next{0x7000};
  return next.fetch_add(1);
}

/// Creates the wrapper child and runs its pass-through handler.
inline Window make_wrapper(const Instance& inst, const Window& parent, int x,
                           int y, int w, int h) {
  auto d = inst.display();
  ensure_internal_class(d, "chanwin.wrapper");
  WindowClass wc(d, "chanwin.wrapper");
  return create_child(
      wc, "", {WindowStyle::WS_CHILD, WindowStyle::WS_VISIBLE}, parent, x, y,
      w, h, next_control_child_id(), [](Window win, cml::Channel<Msg> ch) {
        for (;;) {
          Msg m = cml::recv(ch);
          if (is<WmDestroy>(m)) return;
          default_action(win, m);
        }
      });
}

template <class N>
struct NotifySource {
  std::shared_ptr<cml::Mailbox<N>> mbox = std::make_shared<cml::Mailbox<N>>();
  cml::Channel<N> chan;

  void start_forwarder() const {
    auto m = mbox;
    auto c = chan;
    cml::spawn([m, c] {
      for (;;) {
        auto batch = m->pop_all_wait();
        if (batch.empty()) return;
        for (auto& n : batch) cml::send(c, n);
      }
    });
  }
};

}  // namespace detail

// -- push button ------------------------------------------------------------

class PushButton {
 public:
  static PushButton create(const std::string& label, int x, int y, int w,
                           int h, const Instance& inst, const Window& parent) {
    auto d = inst.display();
    Window wrapper = detail::make_wrapper(inst, parent, x, y, w, h);

    detail::NotifySource<ButtonNotify> src;
    src.start_forwarder();
    auto mbox = src.mbox;

    detail::ensure_internal_class(d, "chanwin.button");
    WindowClass wc(d, "chanwin.button");
    Window control = create_child(
        wc, label, {WindowStyle::WS_CHILD, WindowStyle::WS_VISIBLE}, wrapper,
        0, 0, w, h, 1, [label, mbox](Window win, cml::Channel<Msg> ch) {
          bool pressed = false;
          for (;;) {
            Msg m = cml::recv(ch);
            if (is<WmPaint>(m)) {
              auto dc = DeviceContext::get(win);
              dc.fill_rect(win.client_rect(), Brush::white());
              dc.draw_label(label);
              dc.release();
              default_action(win, m);
            } else if (is<WmLButtonDown>(m)) {
              pressed = true;
            } else if (is<WmLButtonUp>(m)) {
              if (pressed) {
                pressed = false;
                mbox->push(ButtonNotify::BN_CLICKED);
              }
            } else if (is<WmLButtonDblClk>(m)) {
              mbox->push(ButtonNotify::BN_DOUBLECLICKED);
            } else if (is<WmDestroy>(m)) {
              mbox->close();
              return;
            } else {
              default_action(win, m);
            }
          }
        });

    d->link_wrapper(control.id(), wrapper.id());

    PushButton b;
    b.control_ = control;
    b.wrapper_ = wrapper;
    b.notify_ = src.chan;
    return b;
  }

  cml::Event<ButtonNotify> notify_evt() const {
    return cml::recv_evt(notify_);
  }

  Window window_of() const { return control_; }
  Window wrapper_window() const { return wrapper_; }

 private:
  Window control_, wrapper_;
  cml::Channel<ButtonNotify> notify_;
};

// -- edit -------------------------------------------------------------------

class Edit {
 public:
  static Edit create(const std::string& text0, int x, int y, int w, int h,
                     const Instance& inst, const Window& parent) {
    auto d = inst.display();
    Window wrapper = detail::make_wrapper(inst, parent, x, y, w, h);

    detail::NotifySource<EditNotify> src;
    src.start_forwarder();
    auto mbox = src.mbox;

    auto st = std::make_shared<State>();
    st->text = text0;

    detail::ensure_internal_class(d, "chanwin.edit");
    WindowClass wc(d, "chanwin.edit");
    Window control = create_child(
        wc, text0, {WindowStyle::WS_CHILD, WindowStyle::WS_VISIBLE}, wrapper,
        0, 0, w, h, 1, [st, mbox](Window win, cml::Channel<Msg> ch) {
          for (;;) {
            Msg m = cml::recv(ch);
            if (is<WmPaint>(m)) {
              std::string text;
              {
                std::lock_guard<std::mutex> lk(st->m);
                text = st->text;
              }
              auto dc = DeviceContext::get(win);
              dc.fill_rect(win.client_rect(), Brush::white());
              dc.draw_label(text);
              dc.release();
              default_action(win, m);
            } else if (const auto* c = std::get_if<WmChar>(&m)) {
              splice(*st, *mbox,
                     std::string(1, static_cast<char>(c->code_point)));
            } else if (is<WmDestroy>(m)) {
              mbox->close();
              return;
            } else {
              default_action(win, m);
            }
          }
        });

    d->link_wrapper(control.id(), wrapper.id());

    Edit e;
    e.control_ = control;
    e.wrapper_ = wrapper;
    e.notify_ = src.chan;
    e.state_ = st;
    e.mbox_ = mbox;
    return e;
  }

  std::pair<int, int> get_sel() const {
    std::lock_guard<std::mutex> lk(state_->m);
    return {state_->sel_start, state_->sel_end};
  }

  /// Reversed ranges are normalized; out-of-range indices clamp to the
  /// current text length.
  void set_sel(int start, int end) {
    std::lock_guard<std::mutex> lk(state_->m);
    set_sel_locked(*state_, start, end);
  }

  void replace_sel(const std::string& s) { splice(*state_, *mbox_, s); }

  std::string text() const {
    std::lock_guard<std::mutex> lk(state_->m);
    return state_->text;
  }

  bool can_undo() const {
    std::lock_guard<std::mutex> lk(state_->m);
    return state_->undo.has_value();
  }

  /// Swaps the current (text, selection) with the undo slot, so a
  /// second undo redoes. No-op when the slot is empty.
  void undo() {
    std::lock_guard<std::mutex> lk(state_->m);
    if (!state_->undo) return;
    Snapshot cur{state_->text, state_->sel_start, state_->sel_end};
    state_->text = state_->undo->text;
    state_->sel_start = state_->undo->sel_start;
    state_->sel_end = state_->undo->sel_end;
    *state_->undo = cur;
    mbox_->push_all({EditNotify::EN_UPDATE, EditNotify::EN_CHANGE});
  }

  void empty_undo_buffer() {
    std::lock_guard<std::mutex> lk(state_->m);
    state_->undo.reset();
  }

  cml::Event<EditNotify> notify_evt() const { return cml::recv_evt(notify_); }

  Window window_of() const { return control_; }
  Window wrapper_window() const { return wrapper_; }

 private:
  struct Snapshot {
    std::string text;
    int sel_start = 0, sel_end = 0;
  };
  struct State {
    std::mutex m;
    std::string text;
    int sel_start = 0, sel_end = 0;
    std::optional<Snapshot> undo;
  };

  static void set_sel_locked(State& st, int start, int end) {
    if (start > end) std::swap(start, end);
    int len = static_cast<int>(st.text.size());
    st.sel_start = std::clamp(start, 0, len);
    st.sel_end = std::clamp(end, 0, len);
  }

  static void splice(State& st, cml::Mailbox<EditNotify>& mbox,
                     const std::string& s) {
    std::lock_guard<std::mutex> lk(st.m);
    st.undo = Snapshot{st.text, st.sel_start, st.sel_end};
    st.text = st.text.substr(0, st.sel_start) + s +
              st.text.substr(st.sel_end);
    int caret = st.sel_start + static_cast<int>(s.size());
    st.sel_start = st.sel_end = caret;
    mbox.push_all({EditNotify::EN_UPDATE, EditNotify::EN_CHANGE});
  }

  Window control_, wrapper_;
  cml::Channel<EditNotify> notify_;
  std::shared_ptr<State> state_;
  std::shared_ptr<cml::Mailbox<EditNotify>> mbox_;
};

}  // namespace chanwin
