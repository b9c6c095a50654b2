#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treefree/metric.hpp"
#include "treefree/molecule.hpp"
#include "treefree/scalar.hpp"

namespace treefree {

// A metric space split into parts that are uniformly separated (alpha)
// and uniformly bounded apart (beta). Part 0 is the part of the global
// base point; its base point is the global base.
struct GluedSpace {
  FiniteMetric metric;
  std::vector<std::string> part_names;        // part 0 first, others by name
  std::vector<std::size_t> part_of;           // per point
  std::vector<std::size_t> part_base;         // per part: a point index
  std::optional<Scalar> alpha, beta;          // absent for a single part
};

// Validates the partition, resolves part base points (default: smallest
// point index per part) and computes the tightest cross-part bounds.
GluedSpace validate_glued(const FiniteMetric& m,
                          const std::map<std::string, std::string>& partition,
                          const std::map<std::string, std::string>& part_bases = {});

// The decomposed norm: sum over parts of the free norm of the part's
// restriction (relative to the part base) plus the l1 mass terms of the
// non-base parts.
Scalar decomposed_norm(const GluedSpace& g, const Molecule& mu);

struct GluingReport {
  Scalar whole;                 // free norm in the glued space
  Scalar decomposed;            // decomposed norm
  std::optional<Scalar> phi_bound;  // 2(alpha+beta+1)/alpha
  std::optional<Scalar> psi_bound;  // max(1, beta)
  bool decomposition_bounded = false;  // decomposed <= phi_bound * whole
  bool whole_bounded = false;          // whole <= psi_bound * decomposed
};

// Verifies both operator-norm bounds; a violation indicates an
// implementation bug and throws BoundViolated.
GluingReport check_gluing_bounds(const GluedSpace& g, const Molecule& mu);

}  // namespace treefree
