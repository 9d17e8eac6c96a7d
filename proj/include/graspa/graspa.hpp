#pragma once

#include "graspa/domain.hpp"
#include "graspa/error.hpp"
#include "graspa/experiments.hpp"
#include "graspa/figures.hpp"
#include "graspa/interpolation.hpp"
#include "graspa/io.hpp"
#include "graspa/maps.hpp"
#include "graspa/stability.hpp"
