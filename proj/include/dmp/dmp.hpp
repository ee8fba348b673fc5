#pragma once

#include <dmp/config.hpp>
#include <dmp/error.hpp>
#include <dmp/manifest.hpp>
#include <dmp/metrics.hpp>
#include <dmp/morphology.hpp>
#include <dmp/png.hpp>
#include <dmp/profile.hpp>
#include <dmp/raster.hpp>
#include <dmp/report.hpp>
#include <dmp/stack.hpp>
#include <dmp/tensor.hpp>
#include <dmp/tiler.hpp>
