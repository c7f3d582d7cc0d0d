#pragma once

#include "depbench/config.hpp"
#include "depbench/csv.hpp"
#include "depbench/manifest.hpp"
#include "depbench/measures.hpp"
#include "depbench/mic_grid.hpp"
#include "depbench/pipeline.hpp"
#include "depbench/power.hpp"
#include "depbench/random.hpp"
#include "depbench/scenarios.hpp"
#include "depbench/svg.hpp"
#include "depbench/types.hpp"
#include "depbench/version.hpp"
