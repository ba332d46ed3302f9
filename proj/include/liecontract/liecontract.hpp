#pragma once

// Umbrella header: exact half-integer labels, the so(4)/iso(3) structure
// tables with their one-parameter contraction, explicit irreducible matrix
// representations of both algebras, and the entrywise convergence diagnostics
// tying them together.

#include "algebra.hpp"
#include "basis.hpp"
#include "contraction.hpp"
#include "errors.hpp"
#include "half_int.hpp"
#include "iso3_rep.hpp"
#include "ladder.hpp"
#include "rep_matrix.hpp"
#include "so4_rep.hpp"
