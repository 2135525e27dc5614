#pragma once

#include "boba/bench.hpp"
#include "boba/graph.hpp"
#include "boba/ingest.hpp"
#include "boba/kernels.hpp"
#include "boba/metrics.hpp"
#include "boba/parallel.hpp"
#include "boba/reorder.hpp"
#include "boba/synth.hpp"
#include "boba/types.hpp"
