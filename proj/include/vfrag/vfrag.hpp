#pragma once

// Umbrella header.

#include "vfrag/algebra/finite_field.hpp"
#include "vfrag/algebra/laurent.hpp"
#include "vfrag/algebra/newton.hpp"
#include "vfrag/algebra/poly.hpp"
#include "vfrag/algebra/ratfun.hpp"
#include "vfrag/algebra/solvers.hpp"
#include "vfrag/decide.hpp"
#include "vfrag/error.hpp"
#include "vfrag/eval.hpp"
#include "vfrag/formula.hpp"
#include "vfrag/fuzz.hpp"
#include "vfrag/models.hpp"
#include "vfrag/normalize.hpp"
#include "vfrag/translate.hpp"
