#pragma once

#include "rmt/combinatorics.hpp"
#include "rmt/determinantal.hpp"
#include "rmt/dyson.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/error.hpp"
#include "rmt/limit_laws.hpp"
#include "rmt/linalg.hpp"
#include "rmt/orthopoly.hpp"
#include "rmt/parallel.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/random.hpp"
#include "rmt/rsk_lpp.hpp"
#include "rmt/spectral_stats.hpp"
