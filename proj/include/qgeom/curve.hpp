#ifndef QGEOM_CURVE_HPP
#define QGEOM_CURVE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qgeom/state.hpp"

namespace qgeom {

// Point of the closed space curve
//   x(t) = (cos t cos 3t, cos t sin 3t, -sin t),
// which lies on the unit sphere and carries an equilateral triangle between
// parameters t, t + 2pi/3, t + 4pi/3.
struct CurvePoint {
  double t = 0.0;
  std::array<double, 3> x{};
};

CurvePoint curve_point(double t);

// Constants of the spectrahedral representation of the curve's convex hull C:
// the hull is the set of v admitting a degree-8 moment vector u with
// A u = (1, v)^T and PSD Hankel moment matrix.
struct AppendixConstants {
  double A[4][9];       // derived by expanding the four degree-8 binary forms
  double A_rref[4][9];  // reduced row echelon form of A

  // particular solution of A u = (1, v)^T with u5..u9 = 0
  std::array<double, 4> particular(const std::array<double, 3>& v) const;
  // u1..u4 from the particular solution and the free variables u5..u9
  std::array<double, 4> head(const std::array<double, 3>& v,
                             const std::array<double, 5>& u_free) const;
};

// Builds the constants once and cross-checks them internally (defining
// polynomial identity, printed-value agreement, RREF); throws
// std::logic_error if any check fails.
const AppendixConstants& build_constants();

// 6x6 real symmetric matrix, row-major; the trace-corrected moment matrix.
using Sym6 = std::array<double, 36>;

// Hankel moment matrix of (v, u_free) with the scalar trace-correction
// block; Tr M = 1 identically.
Sym6 extended_matrix(const std::array<double, 3>& v, const std::array<double, 5>& u_free);

double sym6_min_eigenvalue(const Sym6& m);

struct MomentCertificate {
  std::array<double, 3> v{};
  std::array<double, 5> u_free{};
  double lambda_star = 0.0;
  enum class Status { Inside, Boundary, Outside } status = Status::Outside;
};

struct MembershipOptions {
  int restarts = 4;              // retry cap for the barrier solver
  std::uint64_t seed = 12345;    // jitters the start on retries
  double band = 1e-6;            // |lambda*| below this reports Boundary
};

// Maximizes the (concave) minimum eigenvalue of M(v, u_free) over the five
// free variables by a log-det barrier Newton method (accuracy ~1e-10).
// v is in C iff lambda* >= 0 up to the band. Throws std::runtime_error if
// the solver stagnates on every retry.
MomentCertificate membership_C(const std::array<double, 3>& v,
                               const MembershipOptions& opts = {});

// Support-function outer approximation of C on a direction grid: accepts v
// iff <v, d> <= max_t <x(t), d> + 1e-9 for all M sampled directions, with the
// curve sampled at K parameters. Converges to C from outside as M, K grow.
class CurveHullOracle {
 public:
  CurveHullOracle(int directions, int curve_samples);
  bool contains(const std::array<double, 3>& v) const;

 private:
  std::vector<std::array<double, 3>> dirs_;
  std::vector<double> support_;
};

bool oracle_membership_C(const std::array<double, 3>& v, int directions = 256,
                         int curve_samples = 4096);

// The certificate's moment matrix as a state of order 6; requires
// lambda_star >= -1e-10.
DensityMatrix lift_to_Q6(const MomentCertificate& cert);

// Linear extraction of v from a lifted moment matrix.
std::array<double, 3> recover_v(const Sym6& m);

}  // namespace qgeom

#endif
