#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "treefree/embedding.hpp"
#include "treefree/metric.hpp"
#include "treefree/molecule.hpp"
#include "treefree/scalar.hpp"

namespace treefree {

enum class NormMethod { lp, flow, tree_cut, line, three_point, discrete };

const char* norm_method_name(NormMethod m);

struct FlowArc {
  std::size_t from, to;
  Scalar amount;
};

// A computed norm together with the certificate its method produces: an
// optimal Lipschitz function for the duality oracle, a transport plan for
// the flow primal, the per-edge cut masses for the tree formula. When a
// dual function and a primal flow both exist for the same molecule their
// objectives agree.
struct NormResult {
  Scalar value;
  NormMethod method;
  std::optional<std::vector<Scalar>> dual_function;  // per point, 0 at base
  std::optional<std::vector<FlowArc>> flow;
  std::optional<std::vector<std::pair<std::size_t, Scalar>>> cut_vector;  // (child vertex, signed mass)
};

// sup { sum_x mu(x) f(x) : f(base) = 0, |f(x)-f(y)| <= d(x,y) }, solved as
// a linear program over the function values.
NormResult lp_norm(const FiniteMetric& m, const Molecule& mu);

// min { sum t(x,y) d(x,y) } over nonnegative flows whose net divergence is
// mu away from the base, the base absorbing the residual mass. Under the
// triangle inequality direct source-to-sink routing is optimal, so this is
// solved as a transportation problem. Equals lp_norm by duality.
NormResult flow_norm(const FiniteMetric& m, const Molecule& mu);

// sum over edges e of w(e) * |mass of mu beyond e|: the l1 norm of the cut
// vector in the realization's coordinates.
NormResult cut_norm(const TreeRealization& r, const Molecule& mu);

// Closed form for a three-point space: with lambda_i the half-sum edge
// lengths of the star realization,
// lambda0 |a1+a2| + lambda1 |a1| + lambda2 |a2|.
Scalar three_point_norm(const Scalar& d01, const Scalar& d02, const Scalar& d12,
                        const Scalar& alpha1, const Scalar& alpha2);

// Closed form for the discrete metric: |sum a_i|/2 + sum |a_i|/2.
Scalar discrete_norm(const std::vector<Scalar>& alpha);

// Cut formula for a subset of the line. `positions` must be strictly
// increasing and contain 0 (the base); `mu` indexes into positions.
Scalar line_norm(const std::vector<Scalar>& positions, const Molecule& mu);

// Certificate checks used by --verify and the tests: feasibility plus
// agreement of the certificate's objective with the reported value.
bool verify_dual_certificate(const FiniteMetric& m, const Molecule& mu, const NormResult& r);
bool verify_flow_certificate(const FiniteMetric& m, const Molecule& mu, const NormResult& r);

}  // namespace treefree
