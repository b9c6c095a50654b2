#pragma once

#include "treefree/metric.hpp"
#include "treefree/molecule.hpp"

namespace treefree::testing {

// Independent free-norm oracle for small exact metrics: enumerates the
// vertices of the dual Lipschitz ball by solving every maximal subsystem
// of binding constraints with rational Gaussian elimination, and takes the
// best feasible objective. No simplex involved.
Rational brute_norm(const FiniteMetric& m, const Molecule& mu);

}  // namespace treefree::testing
