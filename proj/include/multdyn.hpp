#pragma once

// Umbrella header.

#include "multdyn/bigint.hpp"
#include "multdyn/coprime_basis.hpp"
#include "multdyn/counting.hpp"
#include "multdyn/decompose.hpp"
#include "multdyn/dickson.hpp"
#include "multdyn/divisibility.hpp"
#include "multdyn/errors.hpp"
#include "multdyn/factor.hpp"
#include "multdyn/gaussian.hpp"
#include "multdyn/int_matrix.hpp"
#include "multdyn/leveque.hpp"
#include "multdyn/multdep.hpp"
#include "multdyn/orbit.hpp"
#include "multdyn/poly_io.hpp"
#include "multdyn/polynomial.hpp"
#include "multdyn/rational.hpp"
#include "multdyn/semiconjugacy.hpp"
#include "multdyn/squarefree.hpp"
#include "multdyn/standard_pairs.hpp"
