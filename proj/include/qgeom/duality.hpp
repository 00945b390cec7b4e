#ifndef QGEOM_DUALITY_HPP
#define QGEOM_DUALITY_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qgeom/herm.hpp"
#include "qgeom/numrange.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

// Ordered pair of Hilbert-Schmidt-orthonormal traceless Hermitian matrices;
// the screen for planar cross-sections and projections.
//
// Coordinate conventions used throughout this module:
//   cross_section emits Hilbert-Schmidt coordinates (a point at parameter s
//   along the ray phi is the state I/n + s(cos(phi) u + sin(phi) v), at HS
//   distance s from the center), while projection delegates to numerical-
//   range support tracing and therefore emits trace coordinates
//   (Tr(rho u), Tr(rho v)), twice the HS coordinates. With these conventions
//   the offset polar dual with c = 1/n maps one boundary onto the other
//   exactly.
struct Subspace2D {
  HermitianMatrix u, v;

  // validates tracelessness and HS orthonormality to 1e-10
  static Subspace2D make(const HermitianMatrix& u, const HermitianMatrix& v);
  // Gram-Schmidt in the HS metric after removing traces
  static Subspace2D orthonormalized(const HermitianMatrix& a, const HermitianMatrix& b);
  static Subspace2D random(int n, std::uint64_t seed);

  int order() const { return u.order(); }
};

// Boundary of Q_n ∩ (I/n + span(u, v)) by bracketed bisection on the sign of
// the minimum eigenvalue along K uniform rays. K >= 2 (K = 2 yields a
// segment; the CLI enforces K >= 16).
Boundary2D cross_section(const Subspace2D& s, int K);

// Shadow of Q_n on span(u, v) in trace coordinates, traced with K support
// directions.
Boundary2D projection(const Subspace2D& s, int K);

// Offset polar dual {x : c + <x, y> >= 0 for all y in b}, computed from the
// support samples: the dual boundary point at angle phi has radius
// c / h(phi + pi). Requires the origin strictly inside b and c > 0.
Boundary2D polar_dual(const Boundary2D& b, double c);

struct DualityReport {
  double hausdorff_cross = 0.0;  // section vs dual of projection
  double hausdorff_proj = 0.0;   // projection vs dual of section
  int K = 0;
};

// Both Hausdorff distances with offset c = 1/n.
DualityReport verify_duality(const Subspace2D& s, int K);

struct SelfDualityStats {
  double min_inner = 0.0;      // min over sampled pairs of Tr(rho sigma)
  double max_violation = 0.0;  // max(0, -min_inner)
};

// Samples `samples` pairs of random states of order n and reports the
// smallest trace inner product (never below -1e-10 for genuine states).
SelfDualityStats self_duality_check(int n, int samples, std::uint64_t seed);

// For a unit-trace Hermitian sigma with a negative eigenvalue, returns the
// projector rho onto the most negative eigenvector and Tr(sigma rho) < 0.
std::pair<DensityMatrix, double> nonstate_witness(const HermitianMatrix& sigma);

// The two named three-dimensional sections of Q_3.
enum class NamedSection { Elliptope, Cone };

struct Subspace3D {
  HermitianMatrix u, v, w;
};

Subspace3D named_subspace(NamedSection name);

// PSD membership test of the named section at HS coordinates (x, y, z).
bool named_member(NamedSection name, double x, double y, double z, double tol = 1e-10);
// eigenvalue count above 1e-9 of the witnessing matrix
int named_rank(NamedSection name, double x, double y, double z);

// Ray-traced boundary mesh of the section, K points on a Fibonacci sphere.
std::vector<std::array<double, 3>> named_section_mesh(NamedSection name, int K);
// Support points of the 3D projection of Q_3 onto the named subspace, in HS
// coordinates (top-eigenvector lift).
std::vector<std::array<double, 3>> named_projection_points(NamedSection name, int K);

// Upper estimate of the Hausdorff distance between the named section and the
// 3D projection of Q_3 onto its span: the projection support points are
// tested for membership in the section, and any positivity deficit is
// converted to a distance bound. Near zero exactly when the section is
// self-dual (the cone).
double named_self_duality_gap(NamedSection name, int K);

// 2D slice planes of the cone subspace whose sections carry an elliptic,
// parabolic or hyperbolic boundary arc.
enum class ConeSlice { Elliptic, Parabolic, Hyperbolic };
Subspace2D cone_slice_plane(ConeSlice kind);

// The diagonal plane of Q_3 (classical simplex screen).
Subspace2D diagonal_plane_n3();

}  // namespace qgeom

#endif
