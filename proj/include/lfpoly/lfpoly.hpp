#pragma once

// Umbrella header for the exact Bell/Wigner's-friend polytope toolkit.

#include "lfpoly/common.hpp"
#include "lfpoly/dd.hpp"
#include "lfpoly/formats.hpp"
#include "lfpoly/linalg.hpp"
#include "lfpoly/membership.hpp"
#include "lfpoly/models.hpp"
#include "lfpoly/polytope.hpp"
#include "lfpoly/quantum.hpp"
#include "lfpoly/rational.hpp"
#include "lfpoly/scenario.hpp"
#include "lfpoly/simplex.hpp"
#include "lfpoly/symmetry.hpp"
#include "lfpoly/verify.hpp"
