#pragma once

// Umbrella header.

#include "agsp/common.hpp"
#include "agsp/matrix.hpp"
#include "agsp/eig.hpp"
#include "agsp/matfunc.hpp"
#include "agsp/rotations.hpp"
#include "agsp/graphs.hpp"
#include "agsp/spectral.hpp"
#include "agsp/filtering.hpp"
#include "agsp/metrics.hpp"
#include "agsp/noise.hpp"
#include "agsp/io.hpp"
#include "agsp/pipelines.hpp"
#include "agsp/properties.hpp"
#include "agsp/threading.hpp"
