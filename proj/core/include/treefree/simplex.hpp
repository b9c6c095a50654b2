#pragma once

#include <vector>

#include "treefree/scalar.hpp"

namespace treefree {

struct SimplexResult {
  Scalar value;
  std::vector<Scalar> x;
};

// Maximizes c.x subject to A x <= b, x >= 0, where every entry of b is
// nonnegative (so the slack basis is feasible). Dense tableau with Bland's
// rule: terminates on exact rationals; float inputs pivot with the global
// tolerance. Throws UnboundedObjective if no optimum exists.
SimplexResult simplex_max(const std::vector<std::vector<Scalar>>& A,
                          const std::vector<Scalar>& b,
                          const std::vector<Scalar>& c);

}  // namespace treefree
