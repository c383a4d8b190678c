#pragma once

// Umbrella header.

#include "ubgd/corpus.hpp"
#include "ubgd/diagnostics.hpp"
#include "ubgd/drivers.hpp"
#include "ubgd/growth.hpp"
#include "ubgd/linesearch.hpp"
#include "ubgd/objective.hpp"
#include "ubgd/params.hpp"
#include "ubgd/trace.hpp"
#include "ubgd/trace_io.hpp"
#include "ubgd/vector.hpp"
