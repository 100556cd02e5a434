#pragma once

#include "surfguard/bench.hpp"
#include "surfguard/encoding.hpp"
#include "surfguard/error.hpp"
#include "surfguard/geometry.hpp"
#include "surfguard/grid.hpp"
#include "surfguard/image.hpp"
#include "surfguard/io.hpp"
#include "surfguard/metrics.hpp"
#include "surfguard/parallel.hpp"
#include "surfguard/shield.hpp"
#include "surfguard/simulate.hpp"
#include "surfguard/target.hpp"
