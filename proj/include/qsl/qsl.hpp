// qsl.hpp — umbrella header.

#pragma once

#include "qsl/core.hpp"
#include "qsl/dephasing.hpp"
#include "qsl/figures.hpp"
#include "qsl/jc.hpp"
#include "qsl/numerics.hpp"
#include "qsl/sweep.hpp"
