#include "qgeom/herm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgeom {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double s = 0.0;
  for (const auto& z : a_) s = std::max(s, std::abs(z));
  return s;
}

static void require_same_order(int a, int b) {
  if (a != b) throw std::invalid_argument("matrix order mismatch: " + std::to_string(a) +
                                          " vs " + std::to_string(b));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a.order(), b.order());
  ComplexMatrix r(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a.order(), b.order());
  ComplexMatrix r(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_order(a.order(), b.order());
  const int n = a.order();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix r(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) r.at(i, j) = s * a.at(i, j);
  return r;
}

std::vector<Complex> matvec(const ComplexMatrix& a, const std::vector<Complex>& x) {
  require_same_order(a.order(), static_cast<int>(x.size()));
  std::vector<Complex> y(x.size(), 0.0);
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) y[i] += a.at(i, j) * x[j];
  return y;
}

HermitianMatrix HermitianMatrix::from(const ComplexMatrix& m, double tol) {
  const int n = m.order();
  if (n < 1) throw std::invalid_argument("empty matrix");
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      worst = std::max(worst, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
  if (worst > tol)
    throw std::invalid_argument("matrix is not Hermitian: max |A - A^dagger| = " +
                                std::to_string(worst));
  ComplexMatrix s(n);
  for (int i = 0; i < n; ++i) {
    s.at(i, i) = Complex(m.at(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
      s.at(i, j) = v;
      s.at(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(s));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return HermitianMatrix(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::from(a.matrix() + b.matrix(), 1e-9);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::from(a.matrix() - b.matrix(), 1e-9);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix::from(Complex(s, 0.0) * a.matrix(), 1e-9);
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_order(a.order(), b.order());
  // Tr(a^† b) = sum_ij conj(a_ij) b_ij
  double s = 0.0;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      s += (std::conj(a.at(i, j)) * b.at(i, j)).real();
  return 0.5 * s;
}

double hs_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_order(a.order(), b.order());
  double s = 0.0;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) s += std::norm(a.at(i, j) - b.at(i, j));
  return std::sqrt(0.5 * s);
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q), accumulated into v.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex apq = a.at(p, q);
  const double abs_apq = std::abs(apq);
  if (abs_apq == 0.0) return;
  const Complex phase = apq / abs_apq;  // a_pq = |a_pq| * phase
  const double app = a.at(p, p).real();
  const double aqq = a.at(q, q).real();

  const double tau = (aqq - app) / (2.0 * abs_apq);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // G restricted to the (p, q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
  const Complex gqp = -s * std::conj(phase);
  const Complex gqq = c * std::conj(phase);

  const int n = a.order();
  // columns: A <- A G
  for (int k = 0; k < n; ++k) {
    const Complex akp = a.at(k, p), akq = a.at(k, q);
    a.at(k, p) = akp * c + akq * gqp;
    a.at(k, q) = akp * s + akq * gqq;
  }
  // rows: A <- G^† A
  for (int k = 0; k < n; ++k) {
    const Complex apk = a.at(p, k), aqk = a.at(q, k);
    a.at(p, k) = c * apk + std::conj(gqp) * aqk;
    a.at(q, k) = s * apk + std::conj(gqq) * aqk;
  }
  // restore exact hermiticity on the touched entries
  a.at(p, q) = 0.0;
  a.at(q, p) = 0.0;
  a.at(p, p) = Complex(a.at(p, p).real(), 0.0);
  a.at(q, q) = Complex(a.at(q, q).real(), 0.0);
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    a.at(p, k) = std::conj(a.at(k, p));
    a.at(q, k) = std::conj(a.at(k, q));
  }
  // eigenvector accumulation: V <- V G
  for (int k = 0; k < n; ++k) {
    const Complex vkp = v.at(k, p), vkq = v.at(k, q);
    v.at(k, p) = vkp * c + vkq * gqp;
    v.at(k, q) = vkp * s + vkq * gqq;
  }
}

void phase_fix_column(ComplexMatrix& v, int col) {
  const int n = v.order();
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(v.at(i, col));
    if (m > 1e-7) {
      const Complex f = std::conj(v.at(i, col)) / m;
      for (int k = 0; k < n; ++k) v.at(k, col) *= f;
      v.at(i, col) = Complex(std::abs(v.at(i, col)), 0.0);
      return;
    }
  }
}

bool column_lex_less(const ComplexMatrix& v, int c1, int c2) {
  for (int i = 0; i < v.order(); ++i) {
    const Complex a = v.at(i, c1), b = v.at(i, c2);
    if (a.real() != b.real()) return a.real() < b.real();
    if (a.imag() != b.imag()) return a.imag() < b.imag();
  }
  return false;
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& input) {
  const int n = input.order();
  ComplexMatrix a = input.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  const double threshold = 1e-13 * scale;
  const int max_sweeps = 100;

  if (n > 1) {
    int sweep = 0;
    while (offdiag_norm(a) > threshold) {
      if (++sweep > max_sweeps)
        throw std::runtime_error("eig_hermitian: no convergence after 100 sweeps");
      for (int p = 0; p < n - 1; ++p)
        for (int q = p + 1; q < n; ++q)
          if (std::abs(a.at(p, q)) > threshold / (n * n)) jacobi_rotate(a, v, p, q);
    }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a.at(i, i).real();
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return ev[i] > ev[j]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = ev[idx[k]];
    for (int i = 0; i < n; ++i) out.eigenvectors.at(i, k) = v.at(i, idx[k]);
  }
  for (int k = 0; k < n; ++k) phase_fix_column(out.eigenvectors, k);

  // canonical order inside degenerate clusters
  const double cluster_tol = 1e-12 * scale;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && out.eigenvalues[start] - out.eigenvalues[end] <= cluster_tol) ++end;
    if (end - start > 1) {
      std::vector<int> cols(end - start);
      std::iota(cols.begin(), cols.end(), start);
      std::stable_sort(cols.begin(), cols.end(), [&](int i, int j) {
        return column_lex_less(out.eigenvectors, i, j);
      });
      ComplexMatrix tmp(n);
      for (int k = start; k < end; ++k)
        for (int i = 0; i < n; ++i) tmp.at(i, k) = out.eigenvectors.at(i, cols[k - start]);
      std::vector<double> evtmp(end - start);
      for (int k = start; k < end; ++k) evtmp[k - start] = out.eigenvalues[cols[k - start]];
      for (int k = start; k < end; ++k) {
        out.eigenvalues[k] = evtmp[k - start];
        for (int i = 0; i < n; ++i) out.eigenvectors.at(i, k) = tmp.at(i, k);
      }
    }
    start = end;
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& a) {
  const auto e = eig_hermitian(a);
  return e.eigenvalues.back();
}

double max_eigenvalue(const HermitianMatrix& a) {
  const auto e = eig_hermitian(a);
  return e.eigenvalues.front();
}

bool is_psd(const HermitianMatrix& a, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: tol must be nonnegative");
  return min_eigenvalue(a) >= -tol;
}

std::vector<HermitianMatrix> gell_mann_basis(int n) {
  if (n < 2) throw std::invalid_argument("gell_mann_basis: n must be >= 2");
  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<size_t>(n) * n - 1);
  // symmetric pairs: E_jk + E_kj
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix m(n);
      m.at(j, k) = 1.0;
      m.at(k, j) = 1.0;
      basis.push_back(HermitianMatrix::from(m));
    }
  // antisymmetric pairs: -i(E_jk - E_kj)
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix m(n);
      m.at(j, k) = Complex(0.0, -1.0);
      m.at(k, j) = Complex(0.0, 1.0);
      basis.push_back(HermitianMatrix::from(m));
    }
  // diagonal ladder: diag(1, ..., 1, -k, 0, ..., 0) * sqrt(2 / (k (k + 1)))
  for (int k = 1; k < n; ++k) {
    const double norm = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < k; ++i) d[i] = norm;
    d[k] = -norm * k;
    basis.push_back(HermitianMatrix::diagonal(d));
  }
  return basis;
}

BlochCoords bloch_coords(const HermitianMatrix& rho) {
  const double tr = rho.trace_real();
  if (std::abs(tr - 1.0) > 1e-12)
    throw std::invalid_argument("bloch_coords: trace must equal 1, got " + std::to_string(tr));
  const int n = rho.order();
  const auto basis = gell_mann_basis(n);
  BlochCoords c;
  c.n = n;
  c.coords.reserve(basis.size());
  for (const auto& g : basis) c.coords.push_back(hs_inner(rho, g));
  return c;
}

HermitianMatrix bloch_matrix(const BlochCoords& c) {
  const int n = c.n;
  if (n < 2 || c.coords.size() != static_cast<size_t>(n) * n - 1)
    throw std::invalid_argument("bloch_matrix: coordinate length must be n^2 - 1");
  const auto basis = gell_mann_basis(n);
  ComplexMatrix m = ComplexMatrix::identity(n);
  m = Complex(1.0 / n, 0.0) * m;
  for (size_t i = 0; i < basis.size(); ++i)
    m = m + Complex(c.coords[i], 0.0) * basis[i].matrix();
  return HermitianMatrix::from(m, 1e-9);
}

}  // namespace qgeom
