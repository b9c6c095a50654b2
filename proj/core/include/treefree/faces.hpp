#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "treefree/metric.hpp"
#include "treefree/scalar.hpp"

namespace treefree {

// The planar region { a <= x <= b, c <= y <= d, x+e <= y <= x+f }: the
// shape of the face of the four-point Lipschitz ball cut out in the plane
// where the (0,3) distance constraint binds.
struct FaceRegion {
  Scalar a, b, c, d, e, f;
};

enum class FaceShape { empty, segment, rectangle, parallelogram, symmetric_hexagon, asymmetric };

const char* face_shape_name(FaceShape s);

struct SymmetryReport {
  bool symmetric_or_empty = false;  // true iff some condition fired
  std::array<bool, 9> fired{};      // the nine conditions, in order:
                                    // b<=a, d<=c, f<=e, d<=a+e, b+f<=c,
                                    // a+b+e+f=c+d, (d<=a+f & b+e<=c),
                                    // (b+f<=d & c<=a+e), (a+f<=c & d<=b+e)
  FaceShape shape = FaceShape::empty;
};

// Region parameters for the labeling (a0,a1,a2,a3):
// a = d03-d13, b = d01, c = d03-d23, d = d02, e = -d12, f = d12.
// The six distances must form a metric on four points.
FaceRegion face_region(const Scalar& d01, const Scalar& d02, const Scalar& d03,
                       const Scalar& d12, const Scalar& d13, const Scalar& d23);

// Evaluates the nine symmetry-or-emptiness conditions and derives the
// shape of the region from its vertex polygon.
SymmetryReport classify_region(const FaceRegion& r);

// Independent oracle: enumerates the region's vertices by half-plane
// intersection and tests central symmetry of the vertex set about its
// centroid. Empty and degenerate (point/segment) regions count as
// symmetric.
bool brute_symmetry(const FaceRegion& r);

// Vertices of the region, in counterclockwise order (exposed for tests).
std::vector<std::pair<Scalar, Scalar>> region_vertices(const FaceRegion& r);

// Per-labeling face analysis of one quadruple. cd holds the six distance
// conditions the nine region conditions specialize to:
// cd1: d03 = d01+d13            cd2: d03 = d02+d23
// cd3: d01+d23 <= d03+d12 and d02+d13 <= d03+d12
// cd4: d02 = d01+d12 and d23 = d12+d13
// cd5: d01 = d02+d12 and d13 = d12+d23
// cd6: d01+d23 = d02+d13
struct LabelingReport {
  std::array<std::size_t, 4> labeling;  // (a0, a1, a2, a3): point indices
  FaceRegion region;
  SymmetryReport report;
  bool brute = false;                   // brute_symmetry of the region
  std::array<bool, 6> cd{};
  bool reduced = false;                 // d01+d23 <= max(d02+d13, d03+d12)
};

// One labeling per pairing of the quadruple, each realizing its pairing as
// the (0,3) pair. All three faces symmetric-or-empty is equivalent to the
// quadruple satisfying the four-point condition.
struct QuadrupleReport {
  std::array<std::size_t, 4> points;  // ascending
  std::array<LabelingReport, 3> labelings;
  bool all_symmetric = false;
};

QuadrupleReport quadruple_faces(const FiniteMetric& m, std::array<std::size_t, 4> quadruple);

}  // namespace treefree
