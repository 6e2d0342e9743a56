#pragma once

// Verification toolkit for sum-free sets in finite abelian groups: exact
// group arithmetic, characters and transforms, Schur-triple counting by two
// backends, sum-free census and extremal search, coset-density inequality
// checkers, an extremal cosine minimizer, and reproducible report sweeps.

#include "sumfree/numeric.hpp"
#include "sumfree/group.hpp"
#include "sumfree/subset.hpp"
#include "sumfree/character.hpp"
#include "sumfree/schur.hpp"
#include "sumfree/census.hpp"
#include "sumfree/coset.hpp"
#include "sumfree/extremal.hpp"
#include "sumfree/rng.hpp"
#include "sumfree/report_io.hpp"
#include "sumfree/sweep.hpp"
