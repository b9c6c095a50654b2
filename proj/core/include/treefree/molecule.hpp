#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "treefree/metric.hpp"
#include "treefree/scalar.hpp"

namespace treefree {

// A finitely supported coefficient vector over a metric's points: the
// element sum_x coeff(x) * delta_x of the free space. The base evaluation
// is the zero element, so any coefficient at the base point is dropped at
// construction, as are zero coefficients.
class Molecule {
 public:
  Molecule() = default;
  Molecule(const FiniteMetric& m, const std::map<std::size_t, Scalar>& coeffs);

  static Molecule from_labels(const FiniteMetric& m, const std::map<std::string, Scalar>& coeffs);

  const std::map<std::size_t, Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(std::size_t point) const;
  Scalar mass() const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact() const;

  Molecule scaled(const Scalar& c) const;

 private:
  std::map<std::size_t, Scalar> coeffs_;
};

}  // namespace treefree
