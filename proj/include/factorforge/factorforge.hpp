#pragma once

// Umbrella header: exact prime-field arithmetic, a dense polynomial oracle,
// an arithmetic-circuit IR with transformation passes, resultants, univariate
// seed factorization, multivariate Newton lifting of coprime factor splits,
// pure-power extraction, and the full factorization driver.

#include "algebra.hpp"
#include "circuit.hpp"
#include "circuit_expand.hpp"
#include "circuit_ops.hpp"
#include "densepoly.hpp"
#include "error.hpp"
#include "fp.hpp"
#include "lift.hpp"
#include "matrix.hpp"
#include "pipeline.hpp"
#include "purepower.hpp"
#include "resultant.hpp"
#include "rng.hpp"
#include "seed.hpp"
#include "slp_io.hpp"
#include "unipoly.hpp"
