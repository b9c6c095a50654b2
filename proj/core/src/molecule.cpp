#include "treefree/molecule.hpp"

#include "treefree/errors.hpp"

namespace treefree {

Molecule::Molecule(const FiniteMetric& m, const std::map<std::size_t, Scalar>& coeffs) {
  for (const auto& [p, c] : coeffs) {
    if (p >= m.size())
      throw Error(Errc::UnsupportedPoint, "coefficient at point index " + std::to_string(p) + " outside the space",
                  {p});
    if (p == m.base()) continue;
    if (c.sign() == 0) continue;
    coeffs_.emplace(p, c);
  }
}

Molecule Molecule::from_labels(const FiniteMetric& m, const std::map<std::string, Scalar>& coeffs) {
  std::map<std::size_t, Scalar> by_index;
  for (const auto& [label, c] : coeffs) {
    auto idx = m.index_of(label);
    if (!idx) throw Error(Errc::UnknownLabel, "molecule charges unknown point " + label);
    by_index.emplace(*idx, c);
  }
  return Molecule(m, by_index);
}

Scalar Molecule::coeff(std::size_t point) const {
  auto it = coeffs_.find(point);
  return it == coeffs_.end() ? Scalar() : it->second;
}

Scalar Molecule::mass() const {
  Scalar s;
  for (const auto& [p, c] : coeffs_) s += c;
  return s;
}

bool Molecule::is_exact() const {
  for (const auto& [p, c] : coeffs_)
    if (!c.is_exact()) return false;
  return true;
}

Molecule Molecule::scaled(const Scalar& c) const {
  Molecule out;
  if (c.sign() == 0) return out;
  for (const auto& [p, v] : coeffs_) out.coeffs_.emplace(p, v * c);
  return out;
}

}  // namespace treefree
