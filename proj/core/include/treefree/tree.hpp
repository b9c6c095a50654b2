#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treefree/metric.hpp"
#include "treefree/scalar.hpp"

namespace treefree {

// The gap of a marked vertex: its distance to the nearest marked vertex on
// the root side, together with that anchor vertex. The gaps are the atom
// masses of the measure carried by the marked set.
struct GapEntry {
  std::size_t vertex;
  std::size_t anchor;
  Scalar gap;
};

struct GapWeights {
  std::vector<GapEntry> entries;  // marked non-root vertices, ascending id
  Scalar total() const;
  const GapEntry& at(std::size_t vertex) const;
};

// A rooted tree with positive edge weights and a marked subset of vertices
// (the metric points). Every leaf, every branching vertex (degree >= 3)
// and the root must be marked; unmarked vertices are degree-2 pass-through
// points. Immutable after construction.
class WeightedTree {
 public:
  struct Edge {
    std::string u, v;
    Scalar w;
  };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Validates and roots the tree. Zero-weight edges are contracted (two
  // marked endpoints would collapse two metric points and are rejected);
  // negative weights are rejected. `marked` = nullopt marks every vertex.
  static WeightedTree build(const std::string& root_label,
                            const std::vector<std::string>& vertices,
                            const std::vector<Edge>& edges,
                            const std::optional<std::vector<std::string>>& marked = std::nullopt);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  std::optional<std::size_t> vertex(const std::string& label) const;
  std::size_t root() const { return root_; }
  std::size_t parent(std::size_t v) const { return parent_[v]; }  // npos for root
  const Scalar& parent_weight(std::size_t v) const { return pweight_[v]; }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_[v]; }
  bool marked(std::size_t v) const { return marked_[v]; }
  std::size_t degree(std::size_t v) const;
  const Scalar& distance_to_root(std::size_t v) const { return dist_root_[v]; }

  std::vector<std::size_t> marked_vertices() const;  // ascending ids
  Scalar total_weight() const;

  // Sum of the weights on the unique u-v path.
  Scalar path_distance(std::size_t u, std::size_t v) const;

  // The path metric restricted to marked vertices, base = root.
  FiniteMetric induced_metric() const;

  // Gap L(a) and anchor for every marked vertex except the root. The root
  // carries no gap (its atom is dropped with the base evaluation).
  GapWeights gap_weights() const;

  // f'(a) = (f(a) - f(anchor(a))) / L(a) for marked a != root. `f` maps
  // marked vertex ids to values and must vanish at the root.
  std::map<std::size_t, Scalar> discrete_derivative(const std::map<std::size_t, Scalar>& f) const;

  // Marked vertices whose root path uses the edge above `child`.
  std::vector<std::size_t> cut_set(std::size_t child) const;

  // Contracts unmarked degree-2 vertices, merging their edge weights.
  WeightedTree canonicalized() const;

  // Same undirected tree re-rooted at a marked vertex.
  WeightedTree rerooted(const std::string& new_root_label) const;

 private:
  WeightedTree() = default;
  void index_from_root();

  std::vector<std::string> labels_;
  std::vector<std::size_t> parent_;
  std::vector<Scalar> pweight_;  // weight of the edge to parent; 0 for root
  std::vector<std::vector<std::size_t>> children_;
  std::vector<bool> marked_;
  std::vector<std::size_t> depth_;
  std::vector<Scalar> dist_root_;
  std::size_t root_ = 0;

  friend class TreeBuilder;
};

}  // namespace treefree
