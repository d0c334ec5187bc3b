#pragma once

// Structure-preserving strong linearizations of matrix polynomials via
// (modified) block Kronecker pencils, with exact-arithmetic verification.

#include "structlin/scalar.hpp"
#include "structlin/matrix.hpp"
#include "structlin/poly.hpp"
#include "structlin/matpoly.hpp"
#include "structlin/det.hpp"
#include "structlin/bases.hpp"
#include "structlin/pencil_template.hpp"
#include "structlin/oddlin.hpp"
#include "structlin/evenlin.hpp"
#include "structlin/recovery.hpp"
#include "structlin/verify.hpp"
