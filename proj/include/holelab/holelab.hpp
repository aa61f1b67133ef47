#pragma once

#include "holelab/acceptance.hpp"
#include "holelab/conditional.hpp"
#include "holelab/core.hpp"
#include "holelab/fekete.hpp"
#include "holelab/gefhole.hpp"
#include "holelab/mcmc.hpp"
#include "holelab/measures.hpp"
#include "holelab/observables.hpp"
#include "holelab/oned.hpp"
#include "holelab/regions.hpp"
#include "holelab/rng.hpp"
#include "holelab/samplers.hpp"
#include "holelab/stats.hpp"
