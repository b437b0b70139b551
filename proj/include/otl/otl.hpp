#pragma once

#include "otl/common.hpp"
#include "otl/labeling.hpp"
#include "otl/losses.hpp"
#include "otl/prepare.hpp"
#include "otl/solvers.hpp"
