#include "treefree/embedding.hpp"

#include <algorithm>
#include <string>

#include "treefree/errors.hpp"

namespace treefree {

namespace {

// Mutable tree under construction. Vertices are appended; the finished
// structure is handed to WeightedTree::build for rooting and validation.
struct Workbench {
  std::vector<std::string> labels;
  std::vector<std::size_t> parent;
  std::vector<Scalar> pweight;
  std::vector<Scalar> dist_root;   // prefix weights from the root
  std::vector<bool> is_point;
  std::size_t steiner_counter = 0;

  std::size_t add(std::string label, std::size_t par, Scalar w, bool point) {
    std::size_t id = labels.size();
    labels.push_back(std::move(label));
    parent.push_back(par);
    dist_root.push_back(par == WeightedTree::npos ? Scalar() : dist_root[par] + w);
    pweight.push_back(std::move(w));
    is_point.push_back(point);
    return id;
  }

  std::string fresh_steiner(const FiniteMetric& m) {
    // Steiner names must not collide with point labels.
    for (;;) {
      std::string name = "s" + std::to_string(steiner_counter++);
      if (!m.index_of(name) && std::find(labels.begin(), labels.end(), name) == labels.end())
        return name;
    }
  }
};

[[noreturn]] void throw_four_point(const FourPointVerdict::Witness& w, const FiniteMetric& m) {
  auto [a, b, c, d] = w.points;
  throw Error(Errc::FourPointViolation,
              "four-point condition fails on {" + m.label(a) + "," + m.label(b) + "," + m.label(c) + "," +
                  m.label(d) + "}: " + w.s1.str() + " > max(" + w.s2.str() + ", " + w.s3.str() + ")",
              {a, b, c, d});
}

// Targeted witness search once a distance mismatch is known: scan the
// quadruples containing the mismatched pair first, then everything.
[[noreturn]] void find_witness_and_throw(const FiniteMetric& m, std::size_t x, std::size_t y) {
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<std::size_t> q{x, y, a, b};
      std::sort(q.begin(), q.end());
      if (std::unique(q.begin(), q.end()) != q.end()) continue;
      auto sub = m.restrict_to(q, 0);
      auto verdict = four_point_check(sub);
      if (!verdict.holds) {
        FourPointVerdict::Witness w = *verdict.witness;
        for (auto& p : w.points) p = q[p];
        throw_four_point(w, m);
      }
    }
  auto verdict = four_point_check(m);
  if (!verdict.holds) throw_four_point(*verdict.witness, m);
  throw Error(Errc::Internal, "distance mismatch without a four-point witness");
}

}  // namespace

TreeRealization build_tree(const FiniteMetric& m, const std::vector<std::size_t>& insertion_order) {
  const std::size_t n = m.size();
  const std::size_t base = m.base();

  {
    std::vector<bool> seen(n, false);
    seen[base] = true;
    for (std::size_t p : insertion_order) {
      if (p >= n || seen[p]) throw Error(Errc::MalformedInput, "insertion order is not a permutation of the points");
      seen[p] = true;
    }
    if (insertion_order.size() != n - 1)
      throw Error(Errc::MalformedInput, "insertion order is not a permutation of the points");
  }

  // Clean witnesses cost an O(n^4) scan; above this size we construct
  // first and search for a witness only if distances fail to reproduce.
  if (n <= 200) {
    auto verdict = four_point_check(m);
    if (!verdict.holds) throw_four_point(*verdict.witness, m);
  }

  Workbench wb;
  wb.add(m.label(base), WeightedTree::npos, Scalar(), true);

  std::map<std::size_t, std::size_t> point_map;
  point_map[base] = 0;

  for (std::size_t p : insertion_order) {
    // Attachment depth: the deepest point on some placed root path that
    // the geodesic towards p passes through. Scanning placed points in
    // index order keeps the smallest index on ties.
    Scalar s;
    std::size_t best = WeightedTree::npos;
    for (auto [x, vertex_of_x] : point_map) {
      if (x == base) continue;
      Scalar g = gromov_product(m, p, x, base);
      if (best == WeightedTree::npos || g > s) {
        s = g;
        best = x;
      }
    }

    Scalar attach_w = m.d(base, p) - s;
    if (attach_w.sign() < 0)
      throw Error(Errc::NegativeAttachment,
                  "negative attachment length for point " + m.label(p) + "; metric is numerically inconsistent",
                  {p});

    std::size_t location;
    if (best == WeightedTree::npos || s.sign() == 0) {
      location = 0;  // root
    } else {
      // Walk the root path of best's vertex down to depth s.
      std::vector<std::size_t> path;  // vertices root..best_vertex
      for (std::size_t v = point_map.at(best); v != WeightedTree::npos; v = wb.parent[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());

      location = WeightedTree::npos;
      for (std::size_t i = 1; i < path.size(); ++i) {
        std::size_t v = path[i];
        int cmp = s.compare(wb.dist_root[v]);
        if (cmp == 0) {
          location = v;
          break;
        }
        if (cmp < 0) {
          // Split the edge above v at depth s.
          Scalar upper = s - wb.dist_root[wb.parent[v]];
          Scalar lower = wb.dist_root[v] - s;
          std::size_t t = wb.add(wb.fresh_steiner(m), wb.parent[v], upper, false);
          wb.parent[v] = t;
          wb.pweight[v] = lower;
          location = t;
          break;
        }
      }
      if (location == WeightedTree::npos) location = path.back();
    }

    if (attach_w.sign() == 0) {
      // p lands on an existing vertex; a validated metric keeps distinct
      // points apart, so that vertex must be a Steiner vertex.
      if (wb.is_point[location])
        throw Error(Errc::Internal, "two metric points collapsed onto one vertex");
      wb.labels[location] = m.label(p);
      wb.is_point[location] = true;
      point_map[p] = location;
    } else {
      point_map[p] = wb.add(m.label(p), location, attach_w, true);
    }
  }

  // Marks: the mapped points plus every remaining Steiner vertex (each is
  // a branching point by construction).
  std::vector<std::string> marks;
  std::vector<WeightedTree::Edge> edges;
  for (std::size_t v = 0; v < wb.labels.size(); ++v) {
    marks.push_back(wb.labels[v]);
    if (wb.parent[v] != WeightedTree::npos)
      edges.push_back({wb.labels[wb.parent[v]], wb.labels[v], wb.pweight[v]});
  }
  TreeRealization r{WeightedTree::build(m.label(base), wb.labels, edges, marks), {}};
  for (auto [pt, v] : point_map) {
    auto mapped = r.tree.vertex(wb.labels[v]);
    if (!mapped) throw Error(Errc::Internal, "realization lost a vertex");
    r.point_map[pt] = *mapped;
  }

  // Verify the realization reproduces every distance before returning it.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (r.tree.path_distance(r.point_map.at(x), r.point_map.at(y)) != m.d(x, y))
        find_witness_and_throw(m, x, y);

  // Vertex bound from the incremental construction.
  if (n >= 2 && r.tree.vertex_count() > 2 * n - 2)
    throw Error(Errc::Internal, "vertex bound exceeded");

  return r;
}

TreeRealization build_tree(const FiniteMetric& m) {
  std::vector<std::size_t> order;
  for (std::size_t p = 0; p < m.size(); ++p)
    if (p != m.base()) order.push_back(p);
  return build_tree(m, order);
}

std::vector<std::pair<std::size_t, Scalar>> l1_coordinates(const TreeRealization& r) {
  std::vector<std::pair<std::size_t, Scalar>> coords;
  for (std::size_t v = 0; v < r.tree.vertex_count(); ++v)
    if (v != r.tree.root()) coords.emplace_back(v, r.tree.parent_weight(v));
  return coords;
}

}  // namespace treefree
