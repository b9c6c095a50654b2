#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "treefree/metric.hpp"
#include "treefree/tree.hpp"

namespace treefree {

// A weighted tree together with an embedding of a finite metric into its
// marked vertices. Path distances between mapped vertices reproduce the
// input distances exactly and the vertex count is at most 2n-2.
struct TreeRealization {
  WeightedTree tree;
  std::map<std::size_t, std::size_t> point_map;  // metric point -> vertex id
};

// Realizes a four-point metric as a weighted tree. Points are inserted in
// index order: each new point attaches at depth max_x (p|x)_base on the
// root path of the maximizing point (smallest index on ties), splitting an
// edge with a Steiner vertex when the attachment falls inside one.
// Throws FourPointViolation (with a witness quadruple) when the metric is
// not a tree metric, NegativeAttachment on a float-mode near-violation.
TreeRealization build_tree(const FiniteMetric& m);

// Same construction with an explicit insertion order over the non-base
// points (must be a permutation of them). The realized distances do not
// depend on the order.
TreeRealization build_tree(const FiniteMetric& m, const std::vector<std::size_t>& insertion_order);

// The realization's edges in a fixed order (ascending child vertex id),
// each identified by its child vertex and weight. Their cut sets define
// the coordinates of the isometric embedding of the free space into
// l1^N, N <= 2n-3.
std::vector<std::pair<std::size_t, Scalar>> l1_coordinates(const TreeRealization& r);

}  // namespace treefree
