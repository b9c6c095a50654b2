#include "treefree/tree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "treefree/errors.hpp"

namespace treefree {

Scalar GapWeights::total() const {
  Scalar s;
  for (const auto& e : entries) s += e.gap;
  return s;
}

const GapEntry& GapWeights::at(std::size_t vertex) const {
  for (const auto& e : entries)
    if (e.vertex == vertex) return e;
  throw Error(Errc::Internal, "no gap entry for vertex " + std::to_string(vertex));
}

namespace {

struct DSU {
  std::vector<std::size_t> p;
  explicit DSU(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

WeightedTree WeightedTree::build(const std::string& root_label,
                                 const std::vector<std::string>& vertices,
                                 const std::vector<Edge>& edges,
                                 const std::optional<std::vector<std::string>>& marked) {
  const std::size_t n = vertices.size();
  if (n == 0) throw Error(Errc::InvalidTree, "tree has no vertices");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(vertices[i], i).second)
      throw Error(Errc::InvalidTree, "duplicate vertex label " + vertices[i]);
  }
  auto lookup = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) throw Error(Errc::UnknownLabel, "unknown vertex label " + l);
    return it->second;
  };

  const std::size_t root_in = lookup(root_label);

  std::vector<bool> is_marked(n, true);
  if (marked) {
    is_marked.assign(n, false);
    for (const auto& l : *marked) is_marked[lookup(l)] = true;
  }

  // Contract zero-weight edges first; two marked endpoints would be two
  // metric points at distance zero.
  DSU dsu(n);
  for (const auto& e : edges) {
    std::size_t u = lookup(e.u), v = lookup(e.v);
    if (u == v) throw Error(Errc::InvalidTree, "self-loop at " + e.u);
    if (e.w.sign() < 0) throw Error(Errc::NonpositiveWeight, "negative weight on edge " + e.u + "-" + e.v, {u, v});
    if (e.w.sign() == 0) {
      if (is_marked[u] && is_marked[v])
        throw Error(Errc::DuplicatePoints, "marked vertices " + e.u + ", " + e.v + " at distance 0", {u, v});
      dsu.unite(u, v);
    }
  }

  // Surviving representative of each contraction group: the marked member
  // if there is one (two would be two metric points at distance zero),
  // otherwise the smallest index.
  std::vector<std::size_t> rep_of_group(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t g = dsu.find(i);
    if (rep_of_group[g] == npos) {
      rep_of_group[g] = i;
    } else if (is_marked[i]) {
      if (is_marked[rep_of_group[g]])
        throw Error(Errc::DuplicatePoints,
                    "marked vertices " + vertices[rep_of_group[g]] + ", " + vertices[i] + " at distance 0",
                    {rep_of_group[g], i});
      rep_of_group[g] = i;
    }
  }
  std::vector<std::size_t> new_id(n, npos);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (rep_of_group[dsu.find(i)] == i) {
      new_id[i] = kept.size();
      kept.push_back(i);
    }
  auto canon = [&](std::size_t i) { return new_id[rep_of_group[dsu.find(i)]]; };

  const std::size_t k = kept.size();
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> adj(k);
  std::size_t positive_edges = 0;
  for (const auto& e : edges) {
    if (e.w.sign() == 0) continue;
    std::size_t u = canon(lookup(e.u)), v = canon(lookup(e.v));
    if (u == v) throw Error(Errc::InvalidTree, "cycle through edge " + e.u + "-" + e.v);
    adj[u].emplace_back(v, e.w);
    adj[v].emplace_back(u, e.w);
    ++positive_edges;
  }
  if (positive_edges != k - 1)
    throw Error(Errc::InvalidTree, "edge count " + std::to_string(positive_edges) + " != vertices-1; not a tree");

  WeightedTree t;
  t.labels_.resize(k);
  t.marked_.resize(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (new_id[i] == npos) continue;
    t.labels_[new_id[i]] = vertices[i];
    t.marked_[new_id[i]] = is_marked[i];
  }

  t.root_ = canon(root_in);
  t.parent_.assign(k, npos);
  t.pweight_.assign(k, Scalar());
  t.children_.assign(k, {});

  // Root the tree; BFS also detects disconnection (cycles are impossible
  // once the edge count matches).
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> queue{t.root_};
  seen[t.root_] = true;
  std::size_t visited = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    ++visited;
    for (const auto& [w, weight] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      t.parent_[w] = v;
      t.pweight_[w] = weight;
      t.children_[v].push_back(w);
      queue.push_back(w);
    }
  }
  if (visited != k) throw Error(Errc::InvalidTree, "tree is disconnected");

  for (std::size_t v = 0; v < k; ++v) std::sort(t.children_[v].begin(), t.children_[v].end());

  // Invariants: root, leaves and branching vertices carry marks.
  if (!t.marked_[t.root_]) throw Error(Errc::InvalidMarks, "root must be marked", {t.root_});
  for (std::size_t v = 0; v < k; ++v) {
    if (t.marked_[v]) continue;
    std::size_t deg = t.children_[v].size() + (v == t.root_ ? 0 : 1);
    if (deg <= 1) throw Error(Errc::InvalidMarks, "leaf " + t.labels_[v] + " must be marked", {v});
    if (deg >= 3) throw Error(Errc::InvalidMarks, "branching vertex " + t.labels_[v] + " must be marked", {v});
  }

  t.index_from_root();
  return t;
}

void WeightedTree::index_from_root() {
  const std::size_t k = labels_.size();
  depth_.assign(k, 0);
  dist_root_.assign(k, Scalar());
  std::deque<std::size_t> queue{root_};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t c : children_[v]) {
      depth_[c] = depth_[v] + 1;
      dist_root_[c] = dist_root_[v] + pweight_[c];
      queue.push_back(c);
    }
  }
}

std::optional<std::size_t> WeightedTree::vertex(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t WeightedTree::degree(std::size_t v) const {
  return children_[v].size() + (v == root_ ? 0 : 1);
}

std::vector<std::size_t> WeightedTree::marked_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (marked_[v]) out.push_back(v);
  return out;
}

Scalar WeightedTree::total_weight() const {
  Scalar s;
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (v != root_) s += pweight_[v];
  return s;
}

Scalar WeightedTree::path_distance(std::size_t u, std::size_t v) const {
  std::size_t a = u, b = v;
  Scalar da, db;
  while (depth_[a] > depth_[b]) {
    da += pweight_[a];
    a = parent_[a];
  }
  while (depth_[b] > depth_[a]) {
    db += pweight_[b];
    b = parent_[b];
  }
  while (a != b) {
    da += pweight_[a];
    db += pweight_[b];
    a = parent_[a];
    b = parent_[b];
  }
  return da + db;
}

FiniteMetric WeightedTree::induced_metric() const {
  std::vector<std::size_t> pts = marked_vertices();
  const std::size_t k = pts.size();
  std::vector<std::string> labels(k);
  std::vector<std::vector<Scalar>> d(k, std::vector<Scalar>(k));
  std::size_t base = 0;
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = labels_[pts[i]];
    if (pts[i] == root_) base = i;
    for (std::size_t j = i + 1; j < k; ++j) d[i][j] = path_distance(pts[i], pts[j]);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) d[i][j] = d[j][i];
  return FiniteMetric::trusted(std::move(labels), std::move(d), base);
}

GapWeights WeightedTree::gap_weights() const {
  GapWeights g;
  for (std::size_t v : marked_vertices()) {
    if (v == root_) continue;
    Scalar gap = pweight_[v];
    std::size_t anchor = parent_[v];
    while (!marked_[anchor]) {
      gap += pweight_[anchor];
      anchor = parent_[anchor];
    }
    g.entries.push_back({v, anchor, gap});
  }
  return g;
}

std::map<std::size_t, Scalar> WeightedTree::discrete_derivative(
    const std::map<std::size_t, Scalar>& f) const {
  auto value = [&](std::size_t v) -> const Scalar& {
    auto it = f.find(v);
    if (it == f.end())
      throw Error(Errc::MalformedInput, "function undefined at marked vertex " + labels_[v], {v});
    return it->second;
  };
  if (value(root_).sign() != 0)
    throw Error(Errc::MalformedInput, "function must vanish at the root", {root_});

  std::map<std::size_t, Scalar> derivative;
  for (const GapEntry& e : gap_weights().entries)
    derivative[e.vertex] = (value(e.vertex) - value(e.anchor)) / e.gap;
  return derivative;
}

std::vector<std::size_t> WeightedTree::cut_set(std::size_t child) const {
  if (child == root_) throw Error(Errc::Internal, "root has no parent edge");
  std::vector<std::size_t> out;
  std::deque<std::size_t> queue{child};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (marked_[v]) out.push_back(v);
    for (std::size_t c : children_[v]) queue.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightedTree WeightedTree::canonicalized() const {
  // Chains of unmarked degree-2 vertices collapse into single edges.
  std::vector<std::string> vertices;
  std::vector<std::string> marks;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (!marked_[v] && degree(v) == 2) continue;
    vertices.push_back(labels_[v]);
    if (marked_[v]) marks.push_back(labels_[v]);
  }
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (v == root_) continue;
    if (!marked_[v] && degree(v) == 2) continue;
    // walk up through removed vertices
    Scalar w = pweight_[v];
    std::size_t p = parent_[v];
    while (!marked_[p] && degree(p) == 2) {
      w += pweight_[p];
      p = parent_[p];
    }
    edges.push_back({labels_[p], labels_[v], w});
  }
  return build(labels_[root_], vertices, edges, marks);
}

WeightedTree WeightedTree::rerooted(const std::string& new_root_label) const {
  auto v = vertex(new_root_label);
  if (!v) throw Error(Errc::UnknownLabel, "unknown vertex label " + new_root_label);
  if (!marked_[*v]) throw Error(Errc::InvalidMarks, "new root must be a marked vertex", {*v});

  std::vector<std::string> marks;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < labels_.size(); ++u) {
    if (marked_[u]) marks.push_back(labels_[u]);
    if (u != root_) edges.push_back({labels_[parent_[u]], labels_[u], pweight_[u]});
  }
  return build(new_root_label, labels_, edges, marks);
}

}  // namespace treefree
