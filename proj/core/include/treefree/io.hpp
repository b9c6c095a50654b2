#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treefree/gluing.hpp"
#include "treefree/metric.hpp"
#include "treefree/molecule.hpp"
#include "treefree/tree.hpp"

namespace treefree {

// A metric file plus its optional extras: line positions (for the line
// formula) and a partition with per-part base points (for glued spaces).
struct MetricFile {
  FiniteMetric metric;
  std::map<std::size_t, std::size_t> relabeling;
  std::optional<std::vector<Scalar>> positions;
  std::map<std::string, std::string> partition;
  std::map<std::string, std::string> part_bases;
};

struct LoadOptions {
  bool exact = true;
  bool merge_duplicates = false;
  std::optional<std::string> base_label;  // CSV has no base field; default first label
};

// JSON: {"points": [...], "base": "label", "d": [[...]]} with optional
// "positions", "partition", "part_bases". Distances are numbers or "p/q"
// strings.
MetricFile load_metric_json(std::istream& in, const LoadOptions& opts);

// CSV: header row of labels, then the square matrix, one row per line.
MetricFile load_metric_csv(std::istream& in, const LoadOptions& opts);

// Dispatches on the file name extension (.csv vs anything else = JSON).
MetricFile load_metric_file(const std::string& path, const LoadOptions& opts);

// {"coeffs": {"label": number|"p/q", ...}}
Molecule load_molecule_json(std::istream& in, const FiniteMetric& m, bool exact);
Molecule load_molecule_file(const std::string& path, const FiniteMetric& m, bool exact);

// {"root": ..., "vertices": [...], "edges": [{"u","v","w"}], "marked": [...]}
WeightedTree load_tree_json(std::istream& in, bool exact);

std::string tree_to_json(const WeightedTree& t);
std::string tree_to_dot(const WeightedTree& t);
// Rooted Newick with branch lengths; weights are printed as decimals.
std::string tree_to_newick(const WeightedTree& t);

std::string metric_to_json(const FiniteMetric& m);

}  // namespace treefree
