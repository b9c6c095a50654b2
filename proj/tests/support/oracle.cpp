#include "oracle.hpp"

#include <optional>
#include <vector>

namespace treefree::testing {

namespace {

struct Hyperplane {
  std::vector<Rational> a;
  Rational b;
};

// Unique solution of the square system, if any.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m,
                                           std::vector<Rational> rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = k;
    for (std::size_t r = col; r < k; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == k) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < k; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

}  // namespace

Rational brute_norm(const FiniteMetric& m, const Molecule& mu) {
  const std::size_t n = m.size();
  std::vector<std::size_t> pts;
  for (std::size_t x = 0; x < n; ++x)
    if (x != m.base()) pts.push_back(x);
  const std::size_t k = pts.size();
  if (k == 0 || mu.is_zero()) return Rational(0);

  std::vector<std::size_t> var_of(n, n);
  for (std::size_t i = 0; i < k; ++i) var_of[pts[i]] = i;

  std::vector<Hyperplane> planes;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      Hyperplane h{std::vector<Rational>(k, Rational(0)), Rational(0)};
      if (x != m.base()) h.a[var_of[x]] = 1;
      if (y != m.base()) h.a[var_of[y]] = -1;
      h.b = m.d(x, y).rat();
      planes.push_back(h);
      h.b = -h.b;
      planes.push_back(h);
    }

  auto feasible = [&](const std::vector<Rational>& f) {
    auto value_at = [&](std::size_t p) { return p == m.base() ? Rational(0) : f[var_of[p]]; };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        Rational diff = value_at(x) - value_at(y);
        if (::abs(diff) > m.d(x, y).rat()) return false;
      }
    return true;
  };

  Rational best(0);  // f = 0 is feasible
  // enumerate k-subsets of planes
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  const std::size_t total = planes.size();
  for (;;) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i : idx) {
      a.push_back(planes[i].a);
      b.push_back(planes[i].b);
    }
    if (auto f = solve(std::move(a), std::move(b)); f && feasible(*f)) {
      Rational objective(0);
      for (const auto& [p, c] : mu.coeffs()) objective += c.rat() * (*f)[var_of[p]];
      if (objective > best) best = objective;
    }
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + total - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return best;
    }
  }
}

}  // namespace treefree::testing
