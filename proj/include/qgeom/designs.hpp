#ifndef QGEOM_DESIGNS_HPP
#define QGEOM_DESIGNS_HPP

#include <cstdint>
#include <vector>

#include "qgeom/herm.hpp"

namespace qgeom {

// Orthonormal basis stored as matrix columns (Gram = identity to 1e-10).
struct UnitaryBasis {
  ComplexMatrix columns;

  static UnitaryBasis from(const ComplexMatrix& m, double tol = 1e-10);
  static UnitaryBasis computational(int n);
  static UnitaryBasis haar_random(int n, std::uint64_t seed);

  int order() const { return columns.order(); }
};

// Candidate complex Hadamard matrix; no invariants at construction,
// verification is the point.
using HadamardCandidate = ComplexMatrix;

// entries omega^{jk} / sqrt(n) with omega = exp(2 pi i / n)
HadamardCandidate fourier_matrix(int n);

// unitary to tol and all entry moduli equal to 1/sqrt(n) to tol
bool is_complex_hadamard(const HadamardCandidate& h, double tol);

// max over i, j of | |<e_i|f_j>|^2 - 1/n |; zero for complementary bases
double complementary_check(const UnitaryBasis& e, const UnitaryBasis& f);

// H' = D1 P1 H P2 D2 with diagonal unitaries D and permutations P; preserves
// the Hadamard property. Phases must be unimodular to 1e-12.
HadamardCandidate equivalence_transform(const HadamardCandidate& h,
                                        const std::vector<Complex>& d1,
                                        const std::vector<int>& p1,
                                        const std::vector<int>& p2,
                                        const std::vector<Complex>& d2);

// first row and column rotated to 1
HadamardCandidate dephased_form(const HadamardCandidate& h);

// sum_{k=0}^{n-1} gcd(k, n) - (2n - 1), with gcd(0, n) = n
long fourier_defect_bound(int n);

struct SicCandidate {
  int n = 0;
  std::vector<std::vector<Complex>> vectors;  // n^2 unit vectors
};

// Weyl-Heisenberg orbit X^a Z^b |fiducial> for a, b in 0..n-1, where X is
// the cyclic shift and Z multiplies coordinate k by omega^k.
SicCandidate wh_orbit(const std::vector<Complex>& fiducial);

// shipped fiducial vectors (n = 2 and n = 3)
std::vector<Complex> sic_fiducial(int n);

struct SicReport {
  bool pure = false;         // unit-norm vectors
  bool centered = false;     // mean projector equals I/n
  bool equidistant = false;  // all pairwise HS distances equal
  double center_dev = 0.0;
  double distance_dev = 0.0;
  double overlap_mean = 0.0;  // common |<psi_i|psi_j>|^2, must be 1/(n+1)
  double overlap_dev = 0.0;
  bool ok() const { return pure && centered && equidistant; }
};

SicReport verify_sic(const SicCandidate& c, double tol = 1e-10);

}  // namespace qgeom

#endif
