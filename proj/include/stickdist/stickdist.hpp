#pragma once

#include "errors.hpp"
#include "montecarlo.hpp"
#include "ngon.hpp"
#include "quadrature.hpp"
#include "quadrilateral.hpp"
#include "roots.hpp"
#include "specfun.hpp"
#include "triangle.hpp"
