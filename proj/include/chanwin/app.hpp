#pragma once

#include <memory>
#include <type_traits>
#include <utility>

#include "chanwin/display.hpp"
#include "chanwin/resources.hpp"

namespace chanwin {

/// Application entry point: builds the display coordinator and the
/// instance handle, runs `main_fn`, and returns its result after
/// dispatching whatever remains on the system queue. Exceptions from
/// `main_fn` propagate to the caller.
template <class F>
auto run_doit(F&& main_fn, std::shared_ptr<ResourceTable> resources = nullptr)
    -> std::invoke_result_t<F&, Instance> {
  auto display = std::make_shared<DisplayCore>();
  if (!resources) resources = std::make_shared<ResourceTable>();
  Instance inst(std::move(display), std::move(resources));

  using R = std::invoke_result_t<F&, Instance>;
  if constexpr (std::is_void_v<R>) {
    main_fn(inst);
    inst.display()->drain_queue();
  } else {
    R r = main_fn(inst);
    inst.display()->drain_queue();
    return r;
  }
}

}  // namespace chanwin
