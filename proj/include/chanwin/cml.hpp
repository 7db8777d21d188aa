#pragma once

#include "chanwin/cml/channel.hpp"
#include "chanwin/cml/clock.hpp"
#include "chanwin/cml/event.hpp"
#include "chanwin/cml/mailbox.hpp"
#include "chanwin/cml/runtime.hpp"
