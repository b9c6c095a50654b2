#include "treefree/faces.hpp"

#include <algorithm>

#include "treefree/errors.hpp"

namespace treefree {

const char* face_shape_name(FaceShape s) {
  switch (s) {
    case FaceShape::empty: return "empty";
    case FaceShape::segment: return "segment";
    case FaceShape::rectangle: return "rectangle";
    case FaceShape::parallelogram: return "parallelogram";
    case FaceShape::symmetric_hexagon: return "symmetric-hexagon";
    case FaceShape::asymmetric: return "asymmetric";
  }
  return "?";
}

FaceRegion face_region(const Scalar& d01, const Scalar& d02, const Scalar& d03,
                       const Scalar& d12, const Scalar& d13, const Scalar& d23) {
  Scalar zero;
  auto at = [&](int i, int j) -> const Scalar& {
    if (i == j) return zero;
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1) return d01;
    if (i == 0 && j == 2) return d02;
    if (i == 0 && j == 3) return d03;
    if (i == 1 && j == 2) return d12;
    if (i == 1 && j == 3) return d13;
    return d23;
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j && at(i, j).sign() < 0)
        throw Error(Errc::NegativeDistance, "face_region: negative distance");
      for (int k = 0; k < 4; ++k)
        if (at(i, j) > at(i, k) + at(k, j))
          throw Error(Errc::TriangleViolation, "face_region: triangle inequality fails",
                      {static_cast<std::size_t>(i), static_cast<std::size_t>(k), static_cast<std::size_t>(j)});
    }
  return FaceRegion{d03 - d13, d01, d03 - d23, d02, -d12, d12};
}

namespace {

using Point = std::pair<Scalar, Scalar>;

bool inside(const FaceRegion& r, const Point& p) {
  const auto& [x, y] = p;
  return r.a <= x && x <= r.b && r.c <= y && y <= r.d && x + r.e <= y && y <= x + r.f;
}

// Candidate vertices: pairwise intersections of the six boundary lines
// x=a, x=b, y=c, y=d, y=x+e, y=x+f (parallel pairs skipped). Every
// feasible intersection of two distinct boundary lines is a vertex of the
// region, which is always bounded.
std::vector<Point> feasible_intersections(const FaceRegion& r) {
  std::vector<Scalar> xs{r.a, r.b}, ys{r.c, r.d}, os{r.e, r.f};
  std::vector<Point> pts;
  auto push = [&](Point p) {
    if (!inside(r, p)) return;
    for (const Point& q : pts)
      if (q.first == p.first && q.second == p.second) return;
    pts.push_back(std::move(p));
  };
  for (const Scalar& x : xs)
    for (const Scalar& y : ys) push({x, y});
  for (const Scalar& x : xs)
    for (const Scalar& o : os) push({x, x + o});
  for (const Scalar& y : ys)
    for (const Scalar& o : os) push({y - o, y});
  return pts;
}

Scalar cross(const Point& origin, const Point& p, const Point& q) {
  return (p.first - origin.first) * (q.second - origin.second) -
         (p.second - origin.second) * (q.first - origin.first);
}

}  // namespace

std::vector<Point> region_vertices(const FaceRegion& r) {
  std::vector<Point> pts = feasible_intersections(r);
  if (pts.size() <= 1) return pts;

  auto lex_less = [](const Point& p, const Point& q) {
    if (!p.first.raw_equal(q.first)) return p.first.raw_less(q.first);
    return p.second.raw_less(q.second);
  };

  // Degenerate region: a segment reduces to its two extreme candidates
  // (interior touch points of other boundary lines are dropped).
  bool collinear = std::all_of(pts.begin(), pts.end(), [&](const Point& p) {
    return cross(pts[0], pts[1], p).sign() == 0;
  });
  if (collinear) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), lex_less);
    return {*lo, *hi};
  }

  // Counterclockwise sort around the centroid of the candidate set.
  Scalar n(static_cast<long>(pts.size()));
  Point center{Scalar(), Scalar()};
  for (const Point& p : pts) {
    center.first += p.first;
    center.second += p.second;
  }
  center.first /= n;
  center.second /= n;

  auto half = [&](const Point& p) {
    // Lower half plane first, then upper; within a half by cross product.
    Scalar dy = p.second - center.second;
    Scalar dx = p.first - center.first;
    if (dy.sign() < 0 || (dy.sign() == 0 && dx.sign() < 0)) return 0;
    return 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const Point& p, const Point& q) {
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    int c = cross(center, p, q).sign();
    if (c != 0) return c > 0;
    // Collinear with the center: order by distance (raw; exact in exact mode).
    Scalar dp = (p.first - center.first) * (p.first - center.first) +
                (p.second - center.second) * (p.second - center.second);
    Scalar dq = (q.first - center.first) * (q.first - center.first) +
                (q.second - center.second) * (q.second - center.second);
    return dp.raw_less(dq);
  });
  return pts;
}

bool brute_symmetry(const FaceRegion& r) {
  std::vector<Point> pts = region_vertices(r);
  if (pts.size() <= 2) return true;

  Scalar n(static_cast<long>(pts.size()));
  Point center{Scalar(), Scalar()};
  for (const Point& p : pts) {
    center.first += p.first;
    center.second += p.second;
  }
  center.first /= n;
  center.second /= n;

  for (const Point& p : pts) {
    Point mirrored{center.first + center.first - p.first, center.second + center.second - p.second};
    bool found = false;
    for (const Point& q : pts)
      if (q.first == mirrored.first && q.second == mirrored.second) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

SymmetryReport classify_region(const FaceRegion& r) {
  SymmetryReport rep;
  const Scalar &a = r.a, &b = r.b, &c = r.c, &d = r.d, &e = r.e, &f = r.f;
  rep.fired = {
      b <= a,
      d <= c,
      f <= e,
      d <= a + e,
      b + f <= c,
      a + b + e + f == c + d,
      d <= a + f && b + e <= c,
      b + f <= d && c <= a + e,
      a + f <= c && d <= b + e,
  };
  rep.symmetric_or_empty = std::any_of(rep.fired.begin(), rep.fired.end(), [](bool x) { return x; });

  std::vector<Point> pts = region_vertices(r);
  if (pts.empty()) {
    rep.shape = FaceShape::empty;
  } else if (pts.size() <= 2) {
    rep.shape = FaceShape::segment;  // point or segment
  } else if (!brute_symmetry(r)) {
    rep.shape = FaceShape::asymmetric;
  } else if (pts.size() == 6) {
    rep.shape = FaceShape::symmetric_hexagon;
  } else {
    // A centrally symmetric quadrilateral: axis-aligned sides make it a
    // rectangle of the box constraints, otherwise a parallelogram with a
    // diagonal pair of sides.
    bool diagonal = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point& p = pts[i];
      const Point& q = pts[(i + 1) % pts.size()];
      Scalar dx = q.first - p.first, dy = q.second - p.second;
      if (dx.sign() != 0 && dy.sign() != 0) diagonal = true;
    }
    rep.shape = diagonal ? FaceShape::parallelogram : FaceShape::rectangle;
  }
  return rep;
}

namespace {

std::array<bool, 6> distance_conditions(const Scalar& d01, const Scalar& d02, const Scalar& d03,
                                        const Scalar& d12, const Scalar& d13, const Scalar& d23) {
  return {
      d03 == d01 + d13,
      d03 == d02 + d23,
      d01 + d23 <= d03 + d12 && d02 + d13 <= d03 + d12,
      d02 == d01 + d12 && d23 == d12 + d13,
      d01 == d02 + d12 && d13 == d12 + d23,
      d01 + d23 == d02 + d13,
  };
}

}  // namespace

QuadrupleReport quadruple_faces(const FiniteMetric& m, std::array<std::size_t, 4> quadruple) {
  std::sort(quadruple.begin(), quadruple.end());
  for (std::size_t i = 0; i + 1 < 4; ++i)
    if (quadruple[i] == quadruple[i + 1])
      throw Error(Errc::MalformedInput, "quadruple must consist of four distinct points",
                  {quadruple[i]});
  if (quadruple[3] >= m.size())
    throw Error(Errc::MalformedInput, "quadruple index out of range", {quadruple[3]});

  const auto [p, q, r, s] = quadruple;

  // The three pairings, each realized as the (a0, a3) pair of a labeling
  // (a0, a1, a2, a3) = (x, u, v, y) for pairing {x,y | u,v}, x<y, u<v.
  const std::array<std::array<std::size_t, 4>, 3> labelings = {{
      {p, r, s, q},  // pairing {p,q | r,s}
      {p, q, s, r},  // pairing {p,r | q,s}
      {p, q, r, s},  // pairing {p,s | q,r}
  }};

  QuadrupleReport report;
  report.points = quadruple;
  report.all_symmetric = true;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto [a0, a1, a2, a3] = labelings[k];
    LabelingReport lr;
    lr.labeling = labelings[k];
    const Scalar &d01 = m.d(a0, a1), &d02 = m.d(a0, a2), &d03 = m.d(a0, a3);
    const Scalar &d12 = m.d(a1, a2), &d13 = m.d(a1, a3), &d23 = m.d(a2, a3);
    lr.region = face_region(d01, d02, d03, d12, d13, d23);
    lr.report = classify_region(lr.region);
    lr.brute = brute_symmetry(lr.region);
    lr.cd = distance_conditions(d01, d02, d03, d12, d13, d23);
    lr.reduced = d01 + d23 <= max(d02 + d13, d03 + d12);
    if (!lr.report.symmetric_or_empty) report.all_symmetric = false;
    report.labelings[k] = std::move(lr);
  }
  return report;
}

}  // namespace treefree
