#pragma once

#include "bsc/bench.hpp"
#include "bsc/contours.hpp"
#include "bsc/correspondence.hpp"
#include "bsc/errors.hpp"
#include "bsc/generators.hpp"
#include "bsc/geometry.hpp"
#include "bsc/hungarian.hpp"
#include "bsc/image.hpp"
#include "bsc/io.hpp"
#include "bsc/otsu.hpp"
#include "bsc/pipeline.hpp"
#include "bsc/shape_context.hpp"
#include "bsc/svg.hpp"
#include "bsc/tps.hpp"
