#pragma once

// Umbrella header for the weak-measurement toolkit.

#include <weakval/complex.hpp>
#include <weakval/dual.hpp>
#include <weakval/ensemble.hpp>
#include <weakval/errors.hpp>
#include <weakval/expr.hpp>
#include <weakval/extraction.hpp>
#include <weakval/finite_diff.hpp>
#include <weakval/gaussian_moments.hpp>
#include <weakval/hermitian.hpp>
#include <weakval/pointer.hpp>
#include <weakval/quantum.hpp>
#include <weakval/scenario.hpp>
