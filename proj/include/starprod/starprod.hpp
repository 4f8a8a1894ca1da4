#pragma once

// umbrella header

#include "starprod/bidiff.hpp"
#include "starprod/diffop.hpp"
#include "starprod/expr.hpp"
#include "starprod/format.hpp"
#include "starprod/gaussint.hpp"
#include "starprod/jet.hpp"
#include "starprod/localop.hpp"
#include "starprod/ncpoly.hpp"
#include "starprod/numcheck.hpp"
#include "starprod/params.hpp"
#include "starprod/parse.hpp"
#include "starprod/phasepoly.hpp"
#include "starprod/planewave.hpp"
#include "starprod/polynomial.hpp"
#include "starprod/scalar.hpp"
#include "starprod/verify.hpp"
