#include "treefree/norms.hpp"

#include <algorithm>
#include <deque>

#include "treefree/errors.hpp"
#include "treefree/simplex.hpp"

namespace treefree {

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::lp: return "lp";
    case NormMethod::flow: return "flow";
    case NormMethod::tree_cut: return "tree-cut";
    case NormMethod::line: return "line";
    case NormMethod::three_point: return "three-point";
    case NormMethod::discrete: return "discrete";
  }
  return "?";
}

NormResult lp_norm(const FiniteMetric& m, const Molecule& mu) {
  const std::size_t n = m.size();
  const std::size_t base = m.base();

  // Variables g_x = f(x) + d(x,base) >= 0, one per non-base point; the box
  // g_x <= 2 d(x,base) is the Lipschitz constraint against the base, and
  // the pair constraints have nonnegative right-hand sides by the triangle
  // inequality, so the slack basis is feasible.
  std::vector<std::size_t> pts;
  for (std::size_t x = 0; x < n; ++x)
    if (x != base) pts.push_back(x);
  const std::size_t k = pts.size();

  std::vector<Scalar> radius(k);
  for (std::size_t i = 0; i < k; ++i) radius[i] = m.d(pts[i], base);

  std::vector<std::vector<Scalar>> A;
  std::vector<Scalar> b;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Scalar> row(k);
    row[i] = Scalar(1);
    A.push_back(std::move(row));
    b.push_back(radius[i] + radius[i]);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Scalar dij = m.d(pts[i], pts[j]);
      std::vector<Scalar> row(k);
      row[i] = Scalar(1);
      row[j] = Scalar(-1);
      A.push_back(row);
      b.push_back(dij + radius[i] - radius[j]);
      row[i] = Scalar(-1);
      row[j] = Scalar(1);
      A.push_back(std::move(row));
      b.push_back(dij + radius[j] - radius[i]);
    }

  std::vector<Scalar> c(k);
  Scalar offset;
  for (std::size_t i = 0; i < k; ++i) {
    c[i] = mu.coeff(pts[i]);
    offset += c[i] * radius[i];
  }

  SimplexResult sol = simplex_max(A, b, c);

  NormResult res;
  res.method = NormMethod::lp;
  res.value = sol.value - offset;
  std::vector<Scalar> f(n);
  for (std::size_t i = 0; i < k; ++i) f[pts[i]] = sol.x[i] - radius[i];
  res.dual_function = std::move(f);
  return res;
}

namespace {

// Transportation simplex on the bipartite source/sink graph, with Bland's
// rule for the entering and leaving cells.
struct Transportation {
  std::size_t S, T;
  std::vector<std::vector<Scalar>> cost;
  std::vector<Scalar> supply, demand;
  std::vector<std::vector<Scalar>> flow;
  std::vector<std::vector<bool>> basis;

  void northwest_corner() {
    flow.assign(S, std::vector<Scalar>(T));
    basis.assign(S, std::vector<bool>(T, false));
    std::vector<Scalar> a = supply, b = demand;
    std::size_t i = 0, j = 0;
    for (std::size_t step = 0; step + 1 < S + T; ++step) {
      Scalar q = min(a[i], b[j]);
      flow[i][j] = q;
      basis[i][j] = true;
      a[i] -= q;
      b[j] -= q;
      if (i == S - 1) ++j;
      else if (j == T - 1) ++i;
      else if (a[i].sign() == 0) ++i;
      else ++j;
    }
  }

  // Node ids: sources 0..S-1, sinks S..S+T-1. Basis cells form a spanning
  // tree of this bipartite graph.
  std::vector<std::vector<std::size_t>> basis_adjacency() const {
    std::vector<std::vector<std::size_t>> adj(S + T);
    for (std::size_t i = 0; i < S; ++i)
      for (std::size_t j = 0; j < T; ++j)
        if (basis[i][j]) {
          adj[i].push_back(S + j);
          adj[S + j].push_back(i);
        }
    return adj;
  }

  void compute_duals(std::vector<Scalar>& u, std::vector<Scalar>& v) const {
    u.assign(S, Scalar());
    v.assign(T, Scalar());
    std::vector<bool> known(S + T, false);
    known[0] = true;
    auto adj = basis_adjacency();
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t other : adj[node]) {
        if (known[other]) continue;
        known[other] = true;
        if (node < S)
          v[other - S] = cost[node][other - S] - u[node];
        else
          u[other] = cost[other][node - S] - v[node - S];
        queue.push_back(other);
      }
    }
  }

  // Tree path from source i to sink j through basis edges.
  std::vector<std::size_t> tree_path(std::size_t i, std::size_t j) const {
    auto adj = basis_adjacency();
    std::vector<std::size_t> prev(S + T, static_cast<std::size_t>(-1));
    std::vector<bool> seen(S + T, false);
    std::deque<std::size_t> queue{i};
    seen[i] = true;
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop_front();
      if (node == S + j) break;
      for (std::size_t other : adj[node])
        if (!seen[other]) {
          seen[other] = true;
          prev[other] = node;
          queue.push_back(other);
        }
    }
    std::vector<std::size_t> path;
    for (std::size_t node = S + j; node != static_cast<std::size_t>(-1); node = prev[node])
      path.push_back(node);
    std::reverse(path.begin(), path.end());
    return path;  // i, sink, source, ..., S+j
  }

  void solve() {
    northwest_corner();
    for (;;) {
      std::vector<Scalar> u, v;
      compute_duals(u, v);

      std::size_t ei = S, ej = T;
      for (std::size_t i = 0; i < S && ei == S; ++i)
        for (std::size_t j = 0; j < T; ++j) {
          if (basis[i][j]) continue;
          if ((cost[i][j] - u[i] - v[j]).sign() < 0) {
            ei = i;
            ej = j;
            break;
          }
        }
      if (ei == S) return;  // optimal

      // The entering cell closes a unique cycle with the basis tree.
      // Cells at odd positions along the path lose flow.
      auto path = tree_path(ei, ej);
      std::vector<std::pair<std::size_t, std::size_t>> minus, plus;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        std::size_t a = path[k], b = path[k + 1];
        std::size_t ci = a < S ? a : b;
        std::size_t cj = a < S ? b - S : a - S;
        if (k % 2 == 0)
          minus.emplace_back(ci, cj);
        else
          plus.emplace_back(ci, cj);
      }

      std::size_t li = S, lj = T;
      Scalar theta;
      for (auto [i, j] : minus) {
        if (li == S || flow[i][j] < theta ||
            (flow[i][j] == theta && (i < li || (i == li && j < lj)))) {
          theta = flow[i][j];
          li = i;
          lj = j;
        }
      }

      for (auto [i, j] : plus) flow[i][j] += theta;
      for (auto [i, j] : minus) flow[i][j] -= theta;
      flow[ei][ej] += theta;
      basis[ei][ej] = true;
      basis[li][lj] = false;
      flow[li][lj] = Scalar();
    }
  }
};

}  // namespace

NormResult flow_norm(const FiniteMetric& m, const Molecule& mu) {
  // Balance the molecule: the base point absorbs the residual mass.
  std::map<std::size_t, Scalar> net = mu.coeffs();
  Scalar mass = mu.mass();
  if (mass.sign() != 0) net[m.base()] = -mass;

  std::vector<std::size_t> sources, sinks;
  std::vector<Scalar> supply, demand;
  for (const auto& [p, c] : net) {
    if (c.sign() > 0) {
      sources.push_back(p);
      supply.push_back(c);
    } else if (c.sign() < 0) {
      sinks.push_back(p);
      demand.push_back(-c);
    }
  }

  NormResult res;
  res.method = NormMethod::flow;
  res.flow = std::vector<FlowArc>{};
  if (sources.empty()) {
    res.value = Scalar();
    return res;
  }

  Transportation tp;
  tp.S = sources.size();
  tp.T = sinks.size();
  tp.supply = supply;
  tp.demand = demand;
  tp.cost.assign(tp.S, std::vector<Scalar>(tp.T));
  for (std::size_t i = 0; i < tp.S; ++i)
    for (std::size_t j = 0; j < tp.T; ++j) tp.cost[i][j] = m.d(sources[i], sinks[j]);
  tp.solve();

  Scalar value;
  for (std::size_t i = 0; i < tp.S; ++i)
    for (std::size_t j = 0; j < tp.T; ++j)
      if (tp.flow[i][j].sign() > 0) {
        value += tp.flow[i][j] * tp.cost[i][j];
        res.flow->push_back({sources[i], sinks[j], tp.flow[i][j]});
      }
  std::sort(res.flow->begin(), res.flow->end(), [](const FlowArc& a, const FlowArc& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  res.value = value;
  return res;
}

NormResult cut_norm(const TreeRealization& r, const Molecule& mu) {
  // Signed mass carried beyond each edge.
  std::vector<std::size_t> vertex_point(r.tree.vertex_count(), static_cast<std::size_t>(-1));
  for (auto [p, v] : r.point_map) vertex_point[v] = p;
  for (const auto& [p, c] : mu.coeffs())
    if (!r.point_map.count(p))
      throw Error(Errc::UnsupportedPoint, "molecule charges point index " + std::to_string(p) +
                                              " outside the realization", {p});

  NormResult res;
  res.method = NormMethod::tree_cut;
  res.cut_vector = std::vector<std::pair<std::size_t, Scalar>>{};
  Scalar value;
  for (auto& [child, weight] : l1_coordinates(r)) {
    Scalar cut_mass;
    for (std::size_t v : r.tree.cut_set(child)) {
      std::size_t p = vertex_point[v];
      if (p != static_cast<std::size_t>(-1)) cut_mass += mu.coeff(p);
    }
    value += weight * cut_mass.abs();
    res.cut_vector->emplace_back(child, cut_mass);
  }
  res.value = value;
  return res;
}

Scalar three_point_norm(const Scalar& d01, const Scalar& d02, const Scalar& d12,
                        const Scalar& alpha1, const Scalar& alpha2) {
  if (d01.sign() < 0 || d02.sign() < 0 || d12.sign() < 0)
    throw Error(Errc::NegativeDistance, "three_point_norm: negative distance");
  if (d12 > d01 + d02 || d01 > d02 + d12 || d02 > d01 + d12)
    throw Error(Errc::TriangleViolation, "three_point_norm: triangle inequality fails");
  Scalar half = Scalar::rational(1, 2);
  Scalar l0 = (d01 + d02 - d12) * half;
  Scalar l1 = (d01 + d12 - d02) * half;
  Scalar l2 = (d02 + d12 - d01) * half;
  return l0 * (alpha1 + alpha2).abs() + l1 * alpha1.abs() + l2 * alpha2.abs();
}

Scalar discrete_norm(const std::vector<Scalar>& alpha) {
  Scalar sum, total;
  for (const Scalar& a : alpha) {
    sum += a;
    total += a.abs();
  }
  return (sum.abs() + total) * Scalar::rational(1, 2);
}

Scalar line_norm(const std::vector<Scalar>& positions, const Molecule& mu) {
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(positions[i] < positions[i + 1]))
      throw Error(Errc::UnsortedInput, "positions must be strictly increasing", {i, i + 1});

  std::size_t base = n;
  for (std::size_t i = 0; i < n; ++i)
    if (positions[i].sign() == 0) base = i;
  if (base == n) throw Error(Errc::MissingBasePoint, "positions must contain 0");

  for (const auto& [p, c] : mu.coeffs())
    if (p >= n) throw Error(Errc::UnsupportedPoint, "molecule charges position index " + std::to_string(p), {p});

  // Each gap contributes its length times the mass on its far side from 0.
  Scalar value;
  for (std::size_t g = 0; g + 1 < n; ++g) {
    Scalar far_mass;
    if (g + 1 <= base) {  // gap left of the base: far side is 0..g
      for (std::size_t i = 0; i <= g; ++i) far_mass += mu.coeff(i);
    } else {  // gap right of the base: far side is g+1..n-1
      for (std::size_t i = g + 1; i < n; ++i) far_mass += mu.coeff(i);
    }
    value += (positions[g + 1] - positions[g]) * far_mass.abs();
  }
  return value;
}

bool verify_dual_certificate(const FiniteMetric& m, const Molecule& mu, const NormResult& r) {
  if (!r.dual_function) return false;
  const auto& f = *r.dual_function;
  if (f.size() != m.size()) return false;
  if (f[m.base()].sign() != 0) return false;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x + 1; y < m.size(); ++y)
      if ((f[x] - f[y]).abs() > m.d(x, y)) return false;
  Scalar pairing;
  for (const auto& [p, c] : mu.coeffs()) pairing += c * f[p];
  return pairing == r.value;
}

bool verify_flow_certificate(const FiniteMetric& m, const Molecule& mu, const NormResult& r) {
  if (!r.flow) return false;
  std::vector<Scalar> divergence(m.size());
  Scalar objective;
  for (const FlowArc& arc : *r.flow) {
    if (arc.from >= m.size() || arc.to >= m.size()) return false;
    if (arc.amount.sign() < 0) return false;
    divergence[arc.from] += arc.amount;
    divergence[arc.to] -= arc.amount;
    objective += arc.amount * m.d(arc.from, arc.to);
  }
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (x == m.base()) continue;  // the base absorbs the residual mass
    if (divergence[x] != mu.coeff(x)) return false;
  }
  return objective == r.value;
}

}  // namespace treefree
