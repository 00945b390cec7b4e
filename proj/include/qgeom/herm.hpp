#ifndef QGEOM_HERM_HPP
#define QGEOM_HERM_HPP

#include <complex>
#include <vector>

namespace qgeom {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  static ComplexMatrix zero(int n) { return ComplexMatrix(n); }
  static ComplexMatrix identity(int n);

  int order() const { return n_; }
  Complex& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Complex& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

std::vector<Complex> matvec(const ComplexMatrix& a, const std::vector<Complex>& x);

// Hermitian matrix. Construction checks the input equals its conjugate
// transpose entrywise to `tol` (default 1e-12) and then symmetrizes, so the
// stored value is exactly Hermitian. Immutable after construction.
class HermitianMatrix {
 public:
  static HermitianMatrix from(const ComplexMatrix& m, double tol = 1e-12);
  static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix::zero(n)); }
  static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  // real diagonal
  static HermitianMatrix diagonal(const std::vector<double>& d);

  int order() const { return m_.order(); }
  const Complex& at(int i, int j) const { return m_.at(i, j); }
  const ComplexMatrix& matrix() const { return m_; }
  double trace_real() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

// Eigenvalues sorted descending; eigenvector k is column k of `eigenvectors`.
// Vectors are phase-fixed (first component of magnitude > 1e-7 made real
// positive) and degenerate clusters are ordered lexicographically by
// component, so the output is deterministic for a fixed input.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Coordinates of a unit-trace Hermitian matrix in the orthonormal traceless
// basis of gell_mann_basis(n); length n^2 - 1.
struct BlochCoords {
  int n = 0;
  std::vector<double> coords;
};

// (1/2) Tr(a^† b); real for Hermitian arguments.
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

// sqrt((1/2) Tr (a-b)^2)
double hs_distance(const HermitianMatrix& a, const HermitianMatrix& b);

// Cyclic Jacobi diagonalization. Iteration cap 100 sweeps, off-diagonal norm
// threshold 1e-13 relative to the input scale; throws std::runtime_error on
// non-convergence.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

bool is_psd(const HermitianMatrix& a, double tol);

// Orthonormal traceless Hermitian basis: symmetric pairs, antisymmetric
// pairs, then the diagonal ladder, each normalized to hs_inner(g, g) = 1.
// For n = 2 this is exactly {sigma_1, sigma_2, sigma_3}.
std::vector<HermitianMatrix> gell_mann_basis(int n);

// coords_i = hs_inner(rho, gamma_i); requires Tr rho = 1 to 1e-12.
BlochCoords bloch_coords(const HermitianMatrix& rho);
// inverse map: I/n + sum_i c_i gamma_i
HermitianMatrix bloch_matrix(const BlochCoords& c);

}  // namespace qgeom

#endif
