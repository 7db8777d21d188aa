// Command-line harness: runs a demo against the simulated display,
// feeding input from a script file (or interactively from stdin) and
// writing the draw-command trace to a file or stdout.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "chanwin/chanwin.hpp"

namespace {

constexpr int kExitHarnessError = 64;
constexpr int kExitParseError = 65;
constexpr int kExitUnknownDemo = 66;

int run_command(const std::string& demo_name, const std::string& script_path,
                const std::string& trace_path, const std::string& manifest_path,
                std::uint64_t seed, std::int64_t max_ms, bool interactive) {
  auto it = chanwin::demos::registry().find(demo_name);
  if (it == chanwin::demos::registry().end()) {
    std::cerr << "unknown demo '" << demo_name << "'; available:";
    for (const auto& [name, fn] : chanwin::demos::registry())
      std::cerr << " " << name;
    std::cerr << "\n";
    return kExitUnknownDemo;
  }

  std::shared_ptr<chanwin::ResourceTable> resources;
  if (!manifest_path.empty()) {
    std::ifstream mf(manifest_path);
    if (!mf) {
      std::cerr << "cannot open manifest: " << manifest_path << "\n";
      return kExitParseError;
    }
    resources = chanwin::parse_manifest(mf);
  } else {
    resources = chanwin::default_resources();
  }

  std::vector<chanwin::InputEvent> events;
  if (!script_path.empty()) {
    std::ifstream sf(script_path);
    if (!sf) {
      std::cerr << "cannot open script: " << script_path << "\n";
      return kExitParseError;
    }
    events = chanwin::parse_script(sf);
  }

  chanwin::cml::seed_choice(seed);

  std::shared_ptr<chanwin::DisplayCore> display;
  int code = chanwin::run_doit(
      [&](const chanwin::Instance& inst) {
        display = inst.display();
        if (interactive) {
          chanwin::InteractiveFeeder feeder(display, std::cin);
          feeder.install();
        } else {
          chanwin::ScriptFeeder feeder(display, events, max_ms);
          feeder.install();
        }
        return it->second(inst);
      },
      resources);

  // Let any handler still finishing its last message go quiet before
  // the trace is written.
  chanwin::cml::runtime().wait_quiescent_or([] { return false; });

  std::string trace = display->trace().text();
  if (trace_path.empty() || trace_path == "-") {
    std::cout << trace;
  } else {
    std::ofstream tf(trace_path, std::ios::binary);
    if (!tf) {
      std::cerr << "cannot open trace for writing: " << trace_path << "\n";
      return kExitHarnessError;
    }
    tf << trace;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic windowing demos over a simulated display"};
  app.require_subcommand(1);

  std::string demo, script_path, trace_path, manifest_path;
  std::uint64_t seed = 0;
  std::int64_t max_ms = 0;
  bool interactive = false;

  auto* run = app.add_subcommand("run", "run a demo");
  run->add_option("demo", demo, "demo name (see `list`)")->required();
  run->add_option("--script", script_path, "input script file");
  run->add_option("--trace", trace_path, "trace output file ('-' = stdout)");
  run->add_option("--manifest", manifest_path, "resource manifest file");
  run->add_option("--seed", seed, "choice RNG seed");
  run->add_option("--max-ms", max_ms,
                  "advance the virtual clock to this time after the script");
  run->add_flag("--interactive", interactive,
                "read script lines from stdin at idle points");

  auto* list = app.add_subcommand("list", "list available demos");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitHarnessError;
  }

  if (list->parsed()) {
    for (const auto& [name, fn] : chanwin::demos::registry())
      std::cout << name << "\n";
    return 0;
  }

  try {
    return run_command(demo, script_path, trace_path, manifest_path, seed,
                       max_ms, interactive);
  } catch (const chanwin::FrameworkError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHarnessError;
  }
}
