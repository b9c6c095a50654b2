#include "treefree/simplex.hpp"

#include <cstddef>

#include "treefree/errors.hpp"

namespace treefree {

SimplexResult simplex_max(const std::vector<std::vector<Scalar>>& A,
                          const std::vector<Scalar>& b,
                          const std::vector<Scalar>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < m; ++i)
    if (b[i].sign() < 0) throw Error(Errc::Internal, "simplex_max requires b >= 0");

  // Tableau rows 0..m-1: [A | I | b]; row m: [-c | 0 | 0].
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<Scalar>> t(m + 1, std::vector<Scalar>(cols));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = Scalar(1);
    t[i][cols - 1] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: entering = smallest column with negative objective row.
    std::size_t pivot_col = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (t[m][j].sign() < 0) {
        pivot_col = j;
        break;
      }
    if (pivot_col == cols) break;

    // Ratio test; ties resolved towards the smallest basis variable.
    std::size_t pivot_row = m;
    Scalar best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][pivot_col].sign() <= 0) continue;
      Scalar ratio = t[i][cols - 1] / t[i][pivot_col];
      if (pivot_row == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[pivot_row])) {
        pivot_row = i;
        best_ratio = ratio;
      }
    }
    if (pivot_row == m)
      throw Error(Errc::UnboundedObjective, "objective unbounded; constraint assembly is inconsistent");

    // Pivot.
    Scalar p = t[pivot_row][pivot_col];
    for (std::size_t j = 0; j < cols; ++j) t[pivot_row][j] /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == pivot_row) continue;
      Scalar factor = t[i][pivot_col];
      if (factor.sign() == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[pivot_row][j];
    }
    basis[pivot_row] = pivot_col;
  }

  SimplexResult res;
  res.x.assign(n, Scalar());
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
  res.value = t[m][cols - 1];
  return res;
}

}  // namespace treefree
