#pragma once

#include "chanwin/app.hpp"
#include "chanwin/cml.hpp"
#include "chanwin/controls.hpp"
#include "chanwin/dc.hpp"
#include "chanwin/demos.hpp"
#include "chanwin/display.hpp"
#include "chanwin/geometry.hpp"
#include "chanwin/msg.hpp"
#include "chanwin/resources.hpp"
#include "chanwin/script.hpp"
#include "chanwin/trace.hpp"
#include "chanwin/window.hpp"
