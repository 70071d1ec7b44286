#pragma once

// Everything at once. Individual headers are self-contained.

#include "frobforge/error.hpp"

#include "frobforge/exact/exp_series.hpp"
#include "frobforge/exact/laurent.hpp"
#include "frobforge/exact/matrix.hpp"
#include "frobforge/exact/multipoly.hpp"
#include "frobforge/exact/rational.hpp"

#include "frobforge/core/chart.hpp"
#include "frobforge/core/deformed_flat.hpp"
#include "frobforge/core/frobenius.hpp"
#include "frobforge/core/integrate.hpp"

#include "frobforge/singularity/an.hpp"
#include "frobforge/singularity/critical.hpp"

#include "frobforge/quantum/p2.hpp"

#include "frobforge/frame/canonical.hpp"

#include "frobforge/isomonodromy/flows.hpp"
#include "frobforge/isomonodromy/gfunction.hpp"

#include "frobforge/descendents/genus1.hpp"
#include "frobforge/descendents/hierarchy.hpp"
#include "frobforge/descendents/omega.hpp"

#include "frobforge/monodromy/braid.hpp"
#include "frobforge/monodromy/connection.hpp"
#include "frobforge/monodromy/hp.hpp"
#include "frobforge/monodromy/stokes.hpp"

#include "frobforge/io/json.hpp"

#include "frobforge/selftest.hpp"
