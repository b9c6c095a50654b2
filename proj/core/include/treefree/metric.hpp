#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treefree/scalar.hpp"

namespace treefree {

struct ValidatedMetric;

struct ValidationOptions {
  bool merge_duplicates = false;
};

// A finite pointed metric space: labeled points, a designated base point
// and a validated symmetric distance matrix. Default-constructed instances
// are empty placeholders.
class FiniteMetric {
 public:
  FiniteMetric() = default;
  // Checks symmetry, zero diagonal, nonnegativity, the triangle inequality
  // and positivity between distinct points. Throws Error with a witness on
  // the first violation found (row-major scan order).
  static ValidatedMetric validate(std::vector<std::string> labels,
                                  std::vector<std::vector<Scalar>> matrix,
                                  std::size_t base,
                                  const ValidationOptions& opts = ValidationOptions());

  // Wraps a matrix that is already known to satisfy every invariant
  // (e.g. the path metric of a weighted tree). Skips the O(n^3) checks.
  static FiniteMetric trusted(std::vector<std::string> labels,
                              std::vector<std::vector<Scalar>> matrix,
                              std::size_t base);

  std::size_t size() const { return labels_.size(); }
  std::size_t base() const { return base_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  const Scalar& d(std::size_t i, std::size_t j) const { return m_[i * labels_.size() + j]; }

  bool is_exact() const { return exact_; }

  // The submetric on `points` (indices into this space), with
  // `base_within` an index into `points`.
  FiniteMetric restrict_to(const std::vector<std::size_t>& points,
                           std::size_t base_within) const;

  // Same space with a different designated origin.
  FiniteMetric with_base(std::size_t new_base) const;

 private:
  std::vector<std::string> labels_;
  std::size_t base_ = 0;
  std::vector<Scalar> m_;
  bool exact_ = true;
};

struct ValidatedMetric {
  FiniteMetric metric;
  // Original index -> surviving index; the identity unless duplicates were
  // merged.
  std::map<std::size_t, std::size_t> relabeling;
};

// Outcome of the four-point condition scan. When the condition fails, the
// witness holds the quadruple relabeled so that s1 = d(a,b)+d(c,d) is the
// strict maximum of the three pair sums.
struct FourPointVerdict {
  struct Witness {
    std::array<std::size_t, 4> points;  // (a, b, c, d)
    Scalar s1, s2, s3;                  // d(a,b)+d(c,d), d(a,c)+d(b,d), d(a,d)+d(b,c)
  };
  bool holds = true;
  std::optional<Witness> witness;
};

// Decides whether every quadruple attains the maximum of its three pair
// sums at least twice. Quadruples with repeated points reduce to the
// triangle inequality, so scanning 4-subsets with the three pairings
// suffices. The witness is the lexicographically smallest failing
// 4-subset, independent of `threads`.
FourPointVerdict four_point_check(const FiniteMetric& m, unsigned threads = 1);

// (x|y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2.
Scalar gromov_product(const FiniteMetric& m, std::size_t x, std::size_t y, std::size_t z);

}  // namespace treefree
