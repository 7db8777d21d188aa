// Acceptance gate: one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chanwin/chanwin.hpp"

using namespace chanwin;
using namespace std::chrono;

namespace {

std::vector<std::string> g_errors;

void expect(bool ok, const std::string& what) {
  if (!ok) g_errors.push_back(what);
}

// ---------------------------------------------------------------------------
// shared helpers

Instance make_instance() {
  return Instance(std::make_shared<DisplayCore>(),
                  std::make_shared<ResourceTable>());
}

Handler passive() {
  return [](Window w, cml::Channel<Msg> ch) {
    for (;;) {
      Msg m = cml::recv(ch);
      if (is<WmDestroy>(m)) return;
      default_action(w, m);
    }
  };
}

struct Collector {
  std::mutex m;
  std::vector<Msg> msgs;
  DisplayCore::RawHandler handler() {
    return [this](WindowId, cml::Channel<Msg> ch) {
      for (;;) {
        Msg msg = cml::recv(ch);
        bool done = is<WmDestroy>(msg);
        {
          std::lock_guard<std::mutex> lk(m);
          msgs.push_back(msg);
        }
        if (done) return;
      }
    };
  }
  std::vector<Msg> snapshot() {
    std::lock_guard<std::mutex> lk(m);
    return msgs;
  }
};

struct BounceOracle {
  int xS = 0, yS = 0, xC = 0, yC = 0, xM = 0, yM = 0;
  void resize(int x, int y) {
    xS = x;
    yS = y;
    xC = x / 2;
    yC = y / 2;
    xM = 10;
    yM = 10;
  }
  std::pair<int, int> tick() {
    std::pair<int, int> origin{xC - 79, yC - 65};
    int nx = xC + xM, ny = yC + yM;
    if (nx + 59 >= xS || nx - 59 <= 0) xM = -xM;
    if (ny + 45 >= yS || ny - 45 <= 0) yM = -yM;
    xC = nx;
    yC = ny;
    return origin;
  }
};

std::filesystem::path g_tmp;

int run_cli(const std::string& args) {
  std::string cmd = std::string(CHANWIN_CLI_PATH) + " " + args + " > " +
                    (g_tmp / "cli.out").string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void inject_click(const Instance& inst, int x, int y) {
  InputEvent ev;
  ev.at_ms = inst.display()->clock_ms();
  ev.kind = InputEvent::Kind::MouseDown;
  ev.x = x;
  ev.y = y;
  inst.display()->inject(ev);
  ev.kind = InputEvent::Kind::MouseUp;
  inst.display()->inject(ev);
  inst.display()->settle();
}

// ---------------------------------------------------------------------------
// 1. rendezvous properties over randomized schedules

void criterion1() {
  auto start = steady_clock::now();

  // zero capacity: a send cannot complete without a receiver, and a
  // recv cannot complete without a sender
  for (int i = 0; i < 50; ++i) {
    cml::Channel<int> ch;
    std::atomic<bool> sent{false};
    cml::spawn([ch, &sent] {
      cml::send(ch, 1);
      sent = true;
    });
    std::this_thread::sleep_for(milliseconds(5));
    expect(!sent.load(), "send completed without a receiver");
    expect(cml::recv(ch) == 1, "transferred value corrupted");
    while (!sent.load()) std::this_thread::yield();

    cml::Channel<int> ch2;
    std::atomic<int> got{-1};
    cml::spawn([ch2, &got] { got = cml::recv(ch2); });
    std::this_thread::sleep_for(milliseconds(5));
    expect(got.load() == -1, "recv completed without a sender");
    cml::send(ch2, 2);
    while (got.load() == -1) std::this_thread::yield();
    expect(got.load() == 2, "received value corrupted");
  }

  // transfer conservation over randomized schedules
  for (int trial = 0; trial < 1000; ++trial) {
    std::mt19937 rng(trial);
    cml::Channel<int> ch;
    int senders = 1 + static_cast<int>(rng() % 4);
    int per = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < senders; ++s) {
      bool yield_between = rng() % 2 == 0;
      cml::spawn([ch, s, per, yield_between] {
        for (int i = 0; i < per; ++i) {
          if (yield_between) std::this_thread::yield();
          cml::send(ch, s * 100 + i);
        }
      });
    }
    std::multiset<int> got, want;
    for (int s = 0; s < senders; ++s)
      for (int i = 0; i < per; ++i) want.insert(s * 100 + i);
    for (std::size_t i = 0; i < want.size(); ++i) got.insert(cml::recv(ch));
    expect(got == want, "transfer conservation violated in trial " +
                            std::to_string(trial));
    if (!g_errors.empty()) return;
  }

  auto secs = duration_cast<seconds>(steady_clock::now() - start).count();
  expect(secs < 30, "rendezvous suite exceeded 30s");
}

// ---------------------------------------------------------------------------
// 2. choice: exactly-once, fairness, flattening, crossed choices

void criterion2() {
  // fairness over two ready channel branches, seeded
  cml::seed_choice(42);
  int first = 0;
  const int kTrials = 10000;
  for (int t = 0; t < kTrials; ++t) {
    cml::Channel<int> a, b;
    std::atomic<int> enrolled{0};
    cml::spawn([a, &enrolled] {
      enrolled.fetch_add(1);
      cml::send(a, 1);
    });
    cml::spawn([b, &enrolled] {
      enrolled.fetch_add(1);
      cml::send(b, 2);
    });
    while (enrolled.load() != 2) std::this_thread::yield();
    std::this_thread::sleep_for(microseconds(50));
    int got = cml::sync(cml::choose<int>({cml::recv_evt(a), cml::recv_evt(b)}));
    if (got == 1) ++first;
    // exactly-once: the loser is still blocked with its value intact
    int other = cml::recv(got == 1 ? b : a);
    expect(got + other == 3, "choice lost or duplicated a transfer");
    if (!g_errors.empty()) return;
  }
  double frac = static_cast<double>(first) / kTrials;
  expect(0.40 <= frac && frac <= 0.60,
         "two-branch fairness out of range: " + std::to_string(frac));

  // nested-choice flattening: same outcome set as the flat choice
  cml::seed_choice(7);
  std::set<int> nested, flat;
  for (int t = 0; t < 1000; ++t) {
    nested.insert(cml::sync(cml::choose<int>(
        {cml::choose<int>({cml::always_evt(1), cml::always_evt(2)}),
         cml::choose<int>({cml::always_evt(3), cml::always_evt(4)})})));
    flat.insert(cml::sync(
        cml::choose<int>({cml::always_evt(1), cml::always_evt(2),
                          cml::always_evt(3), cml::always_evt(4)})));
  }
  expect(nested == std::set<int>{1, 2, 3, 4} && nested == flat,
         "nested choice does not flatten to the same outcome set");

  // crossed symmetric choices terminate with exactly one transfer
  for (int t = 0; t < 10000; ++t) {
    cml::Channel<int> ab, ba;
    std::atomic<int> got_b{-100};
    std::atomic<bool> done_b{false};
    cml::spawn([ab, ba, &got_b, &done_b] {
      got_b = cml::sync(cml::choose<int>(
          {cml::wrap(cml::send_evt(ba, 2), [](cml::Unit) { return -1; }),
           cml::recv_evt(ab)}));
      done_b = true;
    });
    int got_a = cml::sync(cml::choose<int>(
        {cml::wrap(cml::send_evt(ab, 1), [](cml::Unit) { return -1; }),
         cml::recv_evt(ba)}));
    while (!done_b.load()) std::this_thread::yield();
    bool one_transfer =
        (got_a == -1 && got_b.load() == 1) || (got_a == 2 && got_b.load() == -1);
    expect(one_transfer,
           "crossed choice trial " + std::to_string(t) + " not exactly-once");
    if (!g_errors.empty()) return;
  }
}

// ---------------------------------------------------------------------------
// 3. wrap algebra with instrumented counters

void criterion3() {
  // composition order: outer wrap sees the inner wrap's output
  std::vector<int> order;
  auto e = cml::wrap(cml::wrap(cml::always_evt(1),
                               [&](int v) {
                                 order.push_back(10);
                                 return v + 1;
                               }),
                     [&](int v) {
                       order.push_back(20);
                       return v * 3;
                     });
  int got = cml::sync(e);
  expect(got == 6 && order == std::vector<int>{10, 20},
         "wrap composition order wrong");

  // losing branches never execute their wraps
  cml::seed_choice(11);
  std::atomic<long> winner_runs{0}, loser_runs{0};
  for (int t = 0; t < 2000; ++t) {
    cml::Channel<int> a, b;
    bool use_a = t % 2 == 0;
    cml::spawn([a, b, use_a] {
      if (use_a)
        cml::send(a, 1);
      else
        cml::send(b, 2);
    });
    int v = cml::sync(cml::choose<int>(
        {cml::wrap(cml::recv_evt(a),
                   [&](int x) {
                     (use_a ? winner_runs : loser_runs)++;
                     return x;
                   }),
         cml::wrap(cml::recv_evt(b), [&](int x) {
           (use_a ? loser_runs : winner_runs)++;
           return x;
         })}));
    expect(v == (use_a ? 1 : 2), "wrong branch committed");
    if (!g_errors.empty()) return;
  }
  expect(loser_runs.load() == 0, "a losing branch ran its wrap " +
                                     std::to_string(loser_runs.load()) +
                                     " times");
  expect(winner_runs.load() == 2000, "winner wrap count off");
}

// ---------------------------------------------------------------------------
// 4. bounce reproduction through the CLI

void criterion4() {
  auto start = steady_clock::now();
  auto script = g_tmp / "bounce.script";
  {
    std::ofstream f(script);
    f << "0 resize w1 316 262\n";
  }
  std::string base_trace;
  for (int run = 0; run < 20; ++run) {
    auto trace_path = g_tmp / ("bounce" + std::to_string(run) + ".trace");
    int code = run_cli("run bounce --script " + script.string() + " --trace " +
                       trace_path.string() + " --max-ms 2000 --seed 5");
    expect(code == 0, "bounce CLI exited with " + std::to_string(code));
    std::string t = slurp(trace_path);
    if (run == 0)
      base_trace = t;
    else
      expect(t == base_trace,
             "trace differs between runs 0 and " + std::to_string(run));
    if (!g_errors.empty()) return;
  }

  // parse the BitBlt origins out of the canonical trace lines
  std::vector<std::pair<int, int>> origins;
  std::istringstream lines(base_trace);
  std::string l;
  while (std::getline(lines, l)) {
    std::istringstream ls(l);
    std::string op, win;
    int x, y;
    ls >> op >> win >> x >> y;
    if (op == "BITBLT") origins.push_back({x, y});
  }
  expect(origins.size() == 100, "expected 100 BitBlts, saw " +
                                    std::to_string(origins.size()));
  if (!origins.empty())
    expect(origins.front() == std::pair<int, int>{79, 66},
           "first BitBlt origin wrong");
  BounceOracle o;
  o.resize(316, 262);
  for (std::size_t i = 0; i < origins.size(); ++i) {
    auto want = o.tick();
    if (origins[i] != want) {
      expect(false, "BitBlt " + std::to_string(i) + " at (" +
                        std::to_string(origins[i].first) + "," +
                        std::to_string(origins[i].second) + ") expected (" +
                        std::to_string(want.first) + "," +
                        std::to_string(want.second) + ")");
      return;
    }
  }
  auto secs =
      duration_cast<duration<double>>(steady_clock::now() - start).count();
  expect(secs < 5.0, "bounce criterion exceeded 5s");
}

// ---------------------------------------------------------------------------
// 5. composite-control conformance

// Shared structural contract: a creation operation, a notify-event
// operation, a windowOf operation. `stimulate` provokes at least one
// notification.
template <class Control, class N>
void conformance(const Instance& inst, Control& c,
                 const std::function<void()>& stimulate,
                 const std::string& who) {
  Window w = c.window_of();
  expect(w.live(), who + ": window_of not live after create");

  w.move(33, 44);
  inst.display()->settle();
  Rect r = inst.display()->screen_rect(w.id());
  expect(r.left == 33 && r.top == 44,
         who + ": window_of does not support geometry");
  w.move(10, 10);
  inst.display()->settle();

  stimulate();
  bool got = false;
  cml::sync(cml::choose<cml::Unit>(
      {cml::wrap(c.notify_evt(), [&](N) { got = true; })}));
  expect(got, who + ": no notification after stimulus");

  w.destroy();
  inst.display()->settle();
  expect(!w.live(), who + ": window_of survives destroy");
}

void criterion5() {
  // the composite demo behavior itself (through the scripted harness)
  {
    cml::seed_choice(0);
    std::string script =
        "10 mouse_down 30 30\n"
        "10 mouse_up 30 30\n"
        "20 mouse_down 150 30\n"
        "20 mouse_up 150 30\n"
        "30 dbl_click 30 30\n";
    std::istringstream ss(script);
    auto events = parse_script(ss);
    std::shared_ptr<DisplayCore> display;
    int code = run_doit(
        [&](const Instance& inst) {
          display = inst.display();
          ScriptFeeder feeder(display, events, 0);
          feeder.install();
          return demos::registry().at("two_button")(inst);
        },
        default_resources());
    expect(code == 0, "two_button demo exit code " + std::to_string(code));
    std::vector<std::string> notifies;
    std::istringstream lines(display->trace().text());
    std::string l;
    while (std::getline(lines, l))
      if (l.rfind("NOTIFY ", 0) == 0) notifies.push_back(l);
    expect(notifies == std::vector<std::string>{"NOTIFY w1 CLICKED 1",
                                                "NOTIFY w1 CLICKED 2"},
           "composite notifications wrong (double-click not swallowed?)");
  }

  // shared conformance suite: PushButton, Edit, and the composite.
  // each control sits at (10, 10) in a fresh shown parent at (0, 0).
  {
    auto inst = make_instance();
    auto c = register_class(inst, "conf-pb", Cursor::arrow(),
                            Icon::application(), Brush::white(), {});
    Window parent = create_window(c, "p", {WindowStyle::WS_VISIBLE},
                                  CreateOptions{0, 0, 300, 200, {}}, passive());
    PushButton b = PushButton::create("OK", 10, 10, 80, 30, inst, parent);
    inst.display()->settle();
    conformance<PushButton, ButtonNotify>(
        inst, b, [&] { inject_click(inst, 20, 20); }, "PushButton");
  }
  {
    auto inst = make_instance();
    auto c = register_class(inst, "conf-ed", Cursor::arrow(),
                            Icon::application(), Brush::white(), {});
    Window parent = create_window(c, "p", {WindowStyle::WS_VISIBLE},
                                  CreateOptions{0, 0, 300, 200, {}}, passive());
    Edit e = Edit::create("abc", 10, 10, 120, 24, inst, parent);
    inst.display()->settle();
    conformance<Edit, EditNotify>(
        inst, e,
        [&] {
          e.set_sel(0, 0);
          e.replace_sel("x");
        },
        "Edit");
    // drain the second notification of the EN_UPDATE/EN_CHANGE pair
    cml::sync(e.notify_evt());
  }
  {
    auto inst = make_instance();
    auto c = register_class(inst, "conf-tb", Cursor::arrow(),
                            Icon::application(), Brush::white(), {});
    Window parent = create_window(c, "p", {WindowStyle::WS_VISIBLE},
                                  CreateOptions{0, 0, 300, 200, {}}, passive());
    demos::TwoButton t = demos::TwoButton::create(10, 10, 220, 70, inst,
                                                  parent);
    inst.display()->settle();
    conformance<demos::TwoButton, demos::CompositeNotify>(
        inst, t, [&] { inject_click(inst, 30, 30); }, "TwoButton");
  }
}

// ---------------------------------------------------------------------------
// 6. dispatch properties

void criterion6() {
  // per-window FIFO over a randomized 1000-message interleave
  {
    auto d = std::make_shared<DisplayCore>();
    d->register_class("fifo", "arrow", "application", "white", {});
    constexpr int kWindows = 5;
    Collector cs[kWindows];
    WindowId ids[kWindows];
    for (int i = 0; i < kWindows; ++i) {
      DisplayCore::CreateParams p;
      p.class_name = "fifo";
      ids[i] = d->create_window(p, cs[i].handler());
    }
    std::mt19937 rng(99);
    int next_seq[kWindows] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 1000; ++i) {
      int w = static_cast<int>(rng() % kWindows);
      d->post(ids[w], Msg{WmTimer{next_seq[w]++}});
    }
    d->settle();
    for (int w = 0; w < kWindows; ++w) {
      int expect_next = 0;
      bool ok = true;
      for (const auto& m : cs[w].snapshot())
        if (is<WmTimer>(m)) ok &= std::get<WmTimer>(m).timer_id == expect_next++;
      expect(ok && expect_next == next_seq[w],
             "per-window FIFO broken on window " + std::to_string(w));
    }
    for (int w = 0; w < kWindows; ++w) d->destroy_window(ids[w]);
    d->settle();
  }

  // pump liveness: a stalled handler must not block other windows
  {
    auto d = std::make_shared<DisplayCore>();
    d->register_class("live", "arrow", "application", "white", {});
    std::mutex stall_m;
    std::condition_variable stall_cv;
    bool released = false;
    std::atomic<bool> stalled_got{false};
    DisplayCore::CreateParams p;
    p.class_name = "live";
    WindowId stalled = d->create_window(p, [&](WindowId, cml::Channel<Msg> ch) {
      for (;;) {
        Msg m = cml::recv(ch);
        if (is<WmTimer>(m)) {
          std::unique_lock<std::mutex> lk(stall_m);
          stall_cv.wait_for(lk, seconds(10), [&] { return released; });
          stalled_got = true;
        }
        if (is<WmDestroy>(m)) return;
      }
    });
    Collector other;
    WindowId ok_id = d->create_window(p, other.handler());

    d->post(stalled, Msg{WmTimer{1}});
    d->post(ok_id, Msg{WmTimer{2}});
    d->drain_queue();  // dispatch both in one pass; no pump is running
    // the other window must receive while the first handler is stalled
    bool got = false;
    auto deadline = steady_clock::now() + seconds(5);
    while (steady_clock::now() < deadline && !got) {
      for (const auto& m : other.snapshot())
        if (is<WmTimer>(m)) got = true;
      if (!got) std::this_thread::sleep_for(milliseconds(2));
    }
    expect(got, "a stalled handler blocked delivery to other windows");
    expect(!stalled_got.load(), "stall did not actually stall");
    {
      std::lock_guard<std::mutex> lk(stall_m);
      released = true;
    }
    stall_cv.notify_all();
    d->destroy_window(stalled);
    d->destroy_window(ok_id);
    d->settle();
  }

  // exactly one WM_DESTROY, delivered last, on randomized sequences
  {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      auto d = std::make_shared<DisplayCore>();
      d->register_class("rd", "arrow", "application", "white", {});
      int n = 1 + static_cast<int>(rng() % 4);
      std::vector<std::unique_ptr<Collector>> cs;
      std::vector<WindowId> ids;
      for (int i = 0; i < n; ++i) {
        cs.push_back(std::make_unique<Collector>());
        DisplayCore::CreateParams p;
        p.class_name = "rd";
        ids.push_back(d->create_window(p, cs.back()->handler()));
      }
      for (int op = 0; op < 20; ++op) {
        int w = static_cast<int>(rng() % n);
        if (rng() % 3 == 0) {
          d->destroy_window(ids[w]);
        } else if (d->is_window_live(ids[w])) {
          d->post(ids[w], Msg{WmTimer{op}});
        } else {
          bool threw = false;
          try {
            d->post(ids[w], Msg{WmTimer{op}});
          } catch (const FrameworkError&) {
            threw = true;
          }
          expect(threw, "post to a destroyed window did not fail");
        }
      }
      for (int i = 0; i < n; ++i) d->destroy_window(ids[i]);
      d->settle();
      for (int i = 0; i < n; ++i) {
        auto msgs = cs[i]->snapshot();
        int destroys = 0;
        for (const auto& m : msgs) destroys += is<WmDestroy>(m) ? 1 : 0;
        expect(destroys == 1, "WM_DESTROY count " + std::to_string(destroys));
        expect(!msgs.empty() && is<WmDestroy>(msgs.back()),
               "a message was delivered after WM_DESTROY");
      }
      if (!g_errors.empty()) return;
    }
  }
}

// ---------------------------------------------------------------------------
// 7. lifecycle and exit codes

void criterion7() {
  // msg_loop returns the quit value
  {
    auto inst = make_instance();
    auto c = register_class(inst, "exit7", Cursor::arrow(), Icon::application(),
                            Brush::white(), {});
    auto w = create_window(c, "t", {}, {},
                           [](Window win, cml::Channel<Msg> ch) {
                             for (;;) {
                               Msg m = cml::recv(ch);
                               if (is<WmCreate>(m)) {
                                 win.destroy();
                               } else if (is<WmDestroy>(m)) {
                                 win.quit(7);
                                 return;
                               }
                             }
                           });
    expect(msg_loop(w) == 7, "msg_loop did not return the quit code");
    inst.display()->settle();
    expect(inst.display()->live_window_count() == 0, "live windows leaked");
    unregister_class(c);
    expect(inst.display()->registered_class_count() == 0, "classes leaked");
  }
  // and the CLI process status mirrors it
  int code = run_cli("run quit7");
  expect(code == 7, "CLI status for quit(7) was " + std::to_string(code));
}

// ---------------------------------------------------------------------------
// 8. edit semantics against the splice oracle

void criterion8() {
  auto inst = make_instance();
  auto c = register_class(inst, "edacc", Cursor::arrow(), Icon::application(),
                          Brush::white(), {});
  Window parent = create_window(c, "p", {WindowStyle::WS_VISIBLE},
                                CreateOptions{0, 0, 300, 200, {}}, passive());
  Edit e = Edit::create("", 10, 10, 200, 24, inst, parent);
  inst.display()->settle();

  auto consume_pair = [&](const std::string& when) {
    auto a = cml::sync(e.notify_evt());
    auto b = cml::sync(e.notify_evt());
    expect(a == EditNotify::EN_UPDATE && b == EditNotify::EN_CHANGE,
           "notification order wrong " + when);
  };

  std::mt19937 rng(2024);
  auto rand_text = [&](int max_len) {
    int len = static_cast<int>(rng() % (max_len + 1));
    std::string s;
    for (int i = 0; i < len; ++i)
      s.push_back(static_cast<char>('a' + rng() % 26));
    return s;
  };

  std::string shadow;  // independent model of the text
  for (int t = 0; t < 10000; ++t) {
    // occasionally reset to a fresh random document
    if (t % 500 == 0) {
      std::string fresh = rand_text(20);
      e.set_sel(0, static_cast<int>(e.text().size()));
      e.replace_sel(fresh);
      consume_pair("on reset");
      shadow = fresh;
    }

    int raw_a = static_cast<int>(rng() % 40) - 5;
    int raw_b = static_cast<int>(rng() % 40) - 5;
    e.set_sel(raw_a, raw_b);
    // oracle: normalize then clamp against the shadow text
    int lo = std::min(raw_a, raw_b), hi = std::max(raw_a, raw_b);
    int len = static_cast<int>(shadow.size());
    lo = std::clamp(lo, 0, len);
    hi = std::clamp(hi, 0, len);
    if (e.get_sel() != std::pair<int, int>{lo, hi}) {
      expect(false, "selection mismatch at trial " + std::to_string(t));
      return;
    }

    std::string ins = rand_text(10);
    std::string before = shadow;
    int sel_lo = lo, sel_hi = hi;
    e.replace_sel(ins);
    consume_pair("after replaceSel");
    shadow = shadow.substr(0, lo) + ins + shadow.substr(hi);
    int caret = lo + static_cast<int>(ins.size());
    if (e.text() != shadow ||
        e.get_sel() != std::pair<int, int>{caret, caret}) {
      expect(false, "splice mismatch at trial " + std::to_string(t));
      return;
    }

    // undo involution: undo restores, a second undo redoes
    if (t % 10 == 0) {
      e.undo();
      consume_pair("after undo");
      if (e.text() != before ||
          e.get_sel() != std::pair<int, int>{sel_lo, sel_hi}) {
        expect(false, "undo did not restore at trial " + std::to_string(t));
        return;
      }
      e.undo();
      consume_pair("after redo");
      if (e.text() != shadow) {
        expect(false, "undo not an involution at trial " + std::to_string(t));
        return;
      }
    }

    // selection validity after every operation
    auto [s0, s1] = e.get_sel();
    int tl = static_cast<int>(e.text().size());
    if (!(0 <= s0 && s0 <= s1 && s1 <= tl)) {
      expect(false, "selection invalid at trial " + std::to_string(t));
      return;
    }
  }
  expect(e.can_undo(), "undo slot empty after mutations");
  e.empty_undo_buffer();
  expect(!e.can_undo(), "emptyUndoBuffer did not clear the slot");
}

// ---------------------------------------------------------------------------
// 9. wrapper coincidence under randomized geometry

void criterion9() {
  auto inst = make_instance();
  auto c = register_class(inst, "coin", Cursor::arrow(), Icon::application(),
                          Brush::white(), {});
  Window parent = create_window(c, "p", {WindowStyle::WS_VISIBLE},
                                CreateOptions{0, 0, 600, 400, {}}, passive());
  PushButton b = PushButton::create("OK", 10, 10, 80, 30, inst, parent);
  Edit e = Edit::create("t", 10, 60, 120, 24, inst, parent);
  inst.display()->settle();
  auto d = inst.display();

  struct Pair {
    Window control, wrapper;
  };
  Pair pairs[2] = {{b.window_of(), b.wrapper_window()},
                   {e.window_of(), e.wrapper_window()}};

  std::mt19937 rng(4242);
  for (int op = 0; op < 10000; ++op) {
    auto& pr = pairs[rng() % 2];
    int a = static_cast<int>(rng() % 400);
    int bb = static_cast<int>(rng() % 300);
    if (rng() % 2 == 0)
      pr.control.move(a, bb);
    else
      pr.control.resize(1 + a, 1 + bb);
    d->settle();  // quiescent point
    for (const auto& q : pairs) {
      if (d->screen_rect(q.control.id()) != d->screen_rect(q.wrapper.id())) {
        expect(false, "wrapper/control rects diverged at op " +
                          std::to_string(op));
        return;
      }
    }
  }
}

}  // namespace

int main() {
  g_tmp = std::filesystem::temp_directory_path() /
          ("chanwin-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(g_tmp);

  struct Criterion {
    int n;
    const char* name;
    std::function<void()> fn;
  };
  const Criterion criteria[] = {
      {1, "rendezvous properties over randomized schedules", criterion1},
      {2, "choice: exactly-once, fairness, flattening, crossed", criterion2},
      {3, "wrap algebra and losing-branch non-execution", criterion3},
      {4, "bounce reproduction and trace determinism", criterion4},
      {5, "composite-control conformance", criterion5},
      {6, "dispatch: FIFO, pump liveness, destroy ordering", criterion6},
      {7, "lifecycle and exit codes", criterion7},
      {8, "edit semantics against the splice oracle", criterion8},
      {9, "wrapper coincidence under randomized geometry", criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    g_errors.clear();
    try {
      c.fn();
    } catch (const std::exception& ex) {
      g_errors.push_back(std::string("exception: ") + ex.what());
    }
    if (g_errors.empty()) {
      std::cout << "PASS criterion " << c.n << ": " << c.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL criterion " << c.n << ": " << c.name << " — "
                << g_errors.front() << "\n";
    }
  }
  std::filesystem::remove_all(g_tmp);
  return failures;
}
