#ifndef QGEOM_NUMRANGE_HPP
#define QGEOM_NUMRANGE_HPP

#include <vector>

#include "qgeom/herm.hpp"

namespace qgeom {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double dot(const Vec2& a, const Vec2& b);
double dist(const Vec2& a, const Vec2& b);
double cross(const Vec2& a, const Vec2& b);

// How the boundary samples were produced.
//  SupportTraced: theta is an outward normal, h = exact support value,
//                 point = a support point with that normal.
//  RayTraced:     theta is the ray angle of the point from the origin,
//                 h = support estimated as max over sampled points.
enum class BoundaryKind { SupportTraced, RayTraced };

struct BoundarySample {
  double theta = 0.0;
  double h = 0.0;
  Vec2 point;
};

// Sampled convex boundary; samples ordered by theta in [0, 2pi).
struct Boundary2D {
  int order = 0;  // order of the generating matrices
  BoundaryKind kind = BoundaryKind::SupportTraced;
  std::vector<BoundarySample> samples;

  // support of the sampled point set in direction theta
  double support(double theta) const;
};

// max over samples of |h - support(theta)|; the support-consistency defect
double support_consistency_gap(const Boundary2D& b);
// true when consecutive edges turn one way up to `slack`
bool is_convex_ordered(const Boundary2D& b, double slack = 1e-9);

// Symmetric Hausdorff distance between the sampled boundaries, measured
// point-to-polyline both ways.
double hausdorff(const Boundary2D& a, const Boundary2D& b);

struct SupportPoint {
  double h = 0.0;
  Vec2 point;
};

// F = cos(theta) u + sin(theta) v; h = lambda_max(F) and point is the pair of
// expectation values of (u, v) in a top eigenvector. Requires traceless u, v
// of common order, not both zero.
SupportPoint support_point(const HermitianMatrix& u, const HermitianMatrix& v, double theta);

// Field-of-values boundary of an arbitrary complex square matrix, traced with
// K support directions on a uniform grid.
Boundary2D numerical_range(const ComplexMatrix& a, int K);

enum class ShapeClass { NoFlat, OneFlat, TwoFlats, Triangle };

struct FlatSegment {
  double normal = 0.0;  // outward normal angle of the segment
  Vec2 a, b;            // endpoints
  double length() const;
};

struct Corner {
  Vec2 point;
  double theta_begin = 0.0;  // normal cone [theta_begin, theta_end]
  double theta_end = 0.0;
  bool polyhedral = false;
};

struct BoundaryFeatures {
  std::vector<FlatSegment> flats;
  std::vector<Corner> corners;
  std::vector<Vec2> nonexposed;
};

struct ShapeReport {
  ShapeClass shape = ShapeClass::NoFlat;
  std::vector<FlatSegment> flats;
  bool normal_matrix = false;
};

// Boundary-shape classification for 3x3 matrices by the number of maximal
// flat boundary segments (0, 1, 2 or 3).
ShapeReport classify_shape_n3(const ComplexMatrix& a, int K = 512);

// Flats, corners and non-exposed points of a traced boundary. `b` must have
// been produced from the pair (u, v) (support tracing) or live in the (u, v)
// frame (ray tracing).
BoundaryFeatures boundary_features(const Boundary2D& b, const HermitianMatrix& u,
                                   const HermitianMatrix& v);

// Tolerances of the feature detector.
struct FeatureTolerances {
  double gap_rel = 1e-7;    // eigenvalue-degeneracy gap, relative to |F|
  double flat_tol = 1e-6;   // minimum flat segment length
  double point_tol = 1e-7;  // coincidence diameter for corner points
  // minimum normal-cone angle of a corner: 2 grid steps (set per boundary)
};

}  // namespace qgeom

#endif
