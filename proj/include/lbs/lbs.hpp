#pragma once

#include "lbs/a_functions.hpp"
#include "lbs/basis.hpp"
#include "lbs/bessel.hpp"
#include "lbs/determinant.hpp"
#include "lbs/dispersion.hpp"
#include "lbs/eigensolver.hpp"
#include "lbs/errors.hpp"
#include "lbs/gauss_kronrod.hpp"
#include "lbs/oracle.hpp"
#include "lbs/parallel.hpp"
#include "lbs/regions.hpp"
#include "lbs/spectrum.hpp"
#include "lbs/torus_grid.hpp"
