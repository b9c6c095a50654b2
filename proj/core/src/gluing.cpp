#include "treefree/gluing.hpp"

#include <algorithm>

#include "treefree/errors.hpp"
#include "treefree/norms.hpp"

namespace treefree {

GluedSpace validate_glued(const FiniteMetric& m,
                          const std::map<std::string, std::string>& partition,
                          const std::map<std::string, std::string>& part_bases) {
  const std::size_t n = m.size();

  std::vector<std::string> part_name_of_point(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = partition.find(m.label(i));
    if (it == partition.end())
      throw Error(Errc::MalformedInput, "partition does not cover point " + m.label(i), {i});
    part_name_of_point[i] = it->second;
  }
  for (const auto& [label, part] : partition)
    if (!m.index_of(label)) throw Error(Errc::UnknownLabel, "partition names unknown point " + label);

  // Part 0 is the base point's part; the rest sorted by name.
  const std::string base_part = part_name_of_point[m.base()];
  std::vector<std::string> names;
  for (const auto& p : part_name_of_point)
    if (p != base_part && std::find(names.begin(), names.end(), p) == names.end()) names.push_back(p);
  std::sort(names.begin(), names.end());
  names.insert(names.begin(), base_part);

  GluedSpace g;
  g.metric = m;
  g.part_names = names;
  g.part_of.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.part_of[i] = std::find(names.begin(), names.end(), part_name_of_point[i]) - names.begin();

  // Base points: global base for part 0, user-supplied or smallest index
  // otherwise.
  const std::size_t parts = names.size();
  g.part_base.assign(parts, static_cast<std::size_t>(-1));
  g.part_base[0] = m.base();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = g.part_of[i];
    if (p != 0 && g.part_base[p] == static_cast<std::size_t>(-1)) g.part_base[p] = i;
  }
  for (const auto& [part, label] : part_bases) {
    auto pit = std::find(names.begin(), names.end(), part);
    if (pit == names.end()) throw Error(Errc::EmptyPart, "base given for unknown or empty part " + part);
    std::size_t p = pit - names.begin();
    auto idx = m.index_of(label);
    if (!idx) throw Error(Errc::UnknownLabel, "part base " + label + " is not a point");
    if (g.part_of[*idx] != p)
      throw Error(Errc::MalformedInput, "part base " + label + " does not belong to part " + part, {*idx});
    if (p == 0 && *idx != m.base())
      throw Error(Errc::MalformedInput, "the base part's base point must be the global base", {*idx});
    g.part_base[p] = *idx;
  }

  // Tightest cross-part bounds.
  if (parts > 1) {
    Scalar lo, hi;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (g.part_of[i] == g.part_of[j]) continue;
        const Scalar& dij = m.d(i, j);
        if (first) {
          lo = hi = dij;
          first = false;
        } else {
          lo = min(lo, dij);
          hi = max(hi, dij);
        }
      }
    if (lo.sign() <= 0)
      throw Error(Errc::CrossSeparationZero, "parts touch: some cross-part distance is zero");
    g.alpha = lo;
    g.beta = hi;
  }
  return g;
}

namespace {

struct PartView {
  FiniteMetric metric;          // restriction with the part base as base
  Molecule restricted;          // mu restricted to the part, reindexed
  Scalar mass;
};

std::vector<PartView> split(const GluedSpace& g, const Molecule& mu) {
  const std::size_t parts = g.part_names.size();
  std::vector<std::vector<std::size_t>> members(parts);
  for (std::size_t i = 0; i < g.metric.size(); ++i) members[g.part_of[i]].push_back(i);

  std::vector<PartView> views;
  views.reserve(parts);
  for (std::size_t p = 0; p < parts; ++p) {
    const auto& pts = members[p];
    std::size_t base_within =
        std::find(pts.begin(), pts.end(), g.part_base[p]) - pts.begin();
    PartView view;
    view.metric = g.metric.restrict_to(pts, base_within);
    std::map<std::size_t, Scalar> coeffs;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      Scalar c = mu.coeff(pts[k]);
      if (pts[k] == g.metric.base()) c = Scalar();  // base coefficient is dropped
      if (c.sign() != 0) {
        coeffs[k] = c;
        view.mass += c;
      }
    }
    view.restricted = Molecule(view.metric, coeffs);
    views.push_back(std::move(view));
  }
  return views;
}

}  // namespace

Scalar decomposed_norm(const GluedSpace& g, const Molecule& mu) {
  auto views = split(g, mu);
  Scalar total;
  for (std::size_t p = 0; p < views.size(); ++p) {
    // The part molecule relative to the part base: subtracting the mass at
    // the base evaluation changes nothing inside the part's free space.
    total += lp_norm(views[p].metric, views[p].restricted).value;
    if (p != 0) total += views[p].mass.abs();
  }
  return total;
}

GluingReport check_gluing_bounds(const GluedSpace& g, const Molecule& mu) {
  GluingReport report;
  report.whole = lp_norm(g.metric, mu).value;
  report.decomposed = decomposed_norm(g, mu);

  if (g.alpha) {
    Scalar two(2), one(1);
    report.phi_bound = two * (*g.alpha + *g.beta + one) / *g.alpha;
    report.psi_bound = max(one, *g.beta);
    report.decomposition_bounded = report.decomposed <= *report.phi_bound * report.whole;
    report.whole_bounded = report.whole <= *report.psi_bound * report.decomposed;
  } else {
    // Single part: the decomposition is the identity.
    report.decomposition_bounded = report.decomposed == report.whole;
    report.whole_bounded = report.decomposition_bounded;
  }

  if (!report.decomposition_bounded || !report.whole_bounded)
    throw Error(Errc::BoundViolated, "gluing bound violated: decomposed=" + report.decomposed.str() +
                                         " whole=" + report.whole.str());
  return report;
}

}  // namespace treefree
