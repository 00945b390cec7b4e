#include "qgeom/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qgeom/rng.hpp"

namespace qgeom {

UnitaryBasis UnitaryBasis::from(const ComplexMatrix& m, double tol) {
  const ComplexMatrix gram = m.adjoint() * m;
  const ComplexMatrix defect = gram - ComplexMatrix::identity(m.order());
  if (defect.max_abs() > tol)
    throw std::invalid_argument("UnitaryBasis: columns not orthonormal, defect " +
                                std::to_string(defect.max_abs()));
  return UnitaryBasis{m};
}

UnitaryBasis UnitaryBasis::computational(int n) {
  return UnitaryBasis{ComplexMatrix::identity(n)};
}

UnitaryBasis UnitaryBasis::haar_random(int n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = rng.complex_gaussian();
  // modified Gram-Schmidt on columns
  for (int k = 0; k < n; ++k) {
    for (int prev = 0; prev < k; ++prev) {
      Complex ip = 0.0;
      for (int i = 0; i < n; ++i) ip += std::conj(g.at(i, prev)) * g.at(i, k);
      for (int i = 0; i < n; ++i) g.at(i, k) -= ip * g.at(i, prev);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(g.at(i, k));
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) g.at(i, k) /= norm;
  }
  return UnitaryBasis{g};
}

HadamardCandidate fourier_matrix(int n) {
  if (n < 2) throw std::invalid_argument("fourier_matrix: n must be >= 2");
  ComplexMatrix f(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double phase = 2.0 * M_PI * ((static_cast<long>(j) * k) % n) / n;
      f.at(j, k) = inv_sqrt * Complex(std::cos(phase), std::sin(phase));
    }
  return f;
}

bool is_complex_hadamard(const HadamardCandidate& h, double tol) {
  const int n = h.order();
  const ComplexMatrix defect = h.adjoint() * h - ComplexMatrix::identity(n);
  if (defect.max_abs() > tol) return false;
  const double target = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(std::abs(h.at(i, j)) - target) > tol) return false;
  return true;
}

double complementary_check(const UnitaryBasis& e, const UnitaryBasis& f) {
  if (e.order() != f.order())
    throw std::invalid_argument("complementary_check: dimension mismatch");
  const int n = e.order();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex ip = 0.0;
      for (int k = 0; k < n; ++k) ip += std::conj(e.columns.at(k, i)) * f.columns.at(k, j);
      worst = std::max(worst, std::abs(std::norm(ip) - 1.0 / n));
    }
  return worst;
}

namespace {

void check_permutation(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("equivalence_transform: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x])
      throw std::invalid_argument("equivalence_transform: invalid permutation");
    seen[x] = true;
  }
}

void check_phases(const std::vector<Complex>& d, int n) {
  if (static_cast<int>(d.size()) != n)
    throw std::invalid_argument("equivalence_transform: phase vector length mismatch");
  for (const Complex& z : d)
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
      throw std::invalid_argument("equivalence_transform: phases must be unimodular");
}

}  // namespace

HadamardCandidate equivalence_transform(const HadamardCandidate& h,
                                        const std::vector<Complex>& d1,
                                        const std::vector<int>& p1,
                                        const std::vector<int>& p2,
                                        const std::vector<Complex>& d2) {
  const int n = h.order();
  check_phases(d1, n);
  check_phases(d2, n);
  check_permutation(p1, n);
  check_permutation(p2, n);
  // (D1 P1 H P2 D2)[i][j] = d1[i] * H[p1(i)][q] * d2[j] with p2(q) = j
  std::vector<int> p2inv(n);
  for (int q = 0; q < n; ++q) p2inv[p2[q]] = q;
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = d1[i] * h.at(p1[i], p2inv[j]) * d2[j];
  return out;
}

HadamardCandidate dephased_form(const HadamardCandidate& h) {
  const int n = h.order();
  std::vector<Complex> d1(n), d2(n);
  for (int j = 0; j < n; ++j) {
    const Complex z = h.at(0, j);
    d2[j] = (std::abs(z) > 0) ? std::conj(z) / std::abs(z) : Complex(1.0, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    const Complex z = h.at(i, 0) * d2[0];
    d1[i] = (std::abs(z) > 0) ? std::conj(z) / std::abs(z) : Complex(1.0, 0.0);
  }
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  HadamardCandidate out = equivalence_transform(h, d1, id, id, d2);
  // scrub rotation round-off on the leading row and column
  for (int j = 0; j < n; ++j) out.at(0, j) = Complex(std::abs(out.at(0, j)), 0.0);
  for (int i = 1; i < n; ++i) out.at(i, 0) = Complex(std::abs(out.at(i, 0)), 0.0);
  return out;
}

long fourier_defect_bound(int n) {
  if (n < 2) throw std::invalid_argument("fourier_defect_bound: n must be >= 2");
  long sum = 0;
  for (int k = 0; k < n; ++k) sum += std::gcd(k, n);  // gcd(0, n) = n
  return sum - (2L * n - 1);
}

SicCandidate wh_orbit(const std::vector<Complex>& fiducial) {
  const int n = static_cast<int>(fiducial.size());
  if (n < 2) throw std::invalid_argument("wh_orbit: fiducial must have length >= 2");
  double norm = 0.0;
  for (const Complex& z : fiducial) norm += std::norm(z);
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("wh_orbit: fiducial must be unit norm");
  SicCandidate c;
  c.n = n;
  c.vectors.reserve(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<Complex> psi(n);
      for (int k = 0; k < n; ++k) {
        // (X^a Z^b psi)_k = omega^{b (k - a)} psi_{k - a}
        const int src = ((k - a) % n + n) % n;
        const double phase = 2.0 * M_PI * ((static_cast<long>(b) * src) % n) / n;
        psi[k] = Complex(std::cos(phase), std::sin(phase)) * fiducial[src];
      }
      c.vectors.push_back(std::move(psi));
    }
  return c;
}

std::vector<Complex> sic_fiducial(int n) {
  if (n == 2) {
    // Bloch vector (1, 1, 1)/sqrt(3)
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    return {Complex(std::cos(theta / 2.0), 0.0),
            std::polar(std::sin(theta / 2.0), M_PI / 4.0)};
  }
  if (n == 3) {
    const double s = 1.0 / std::sqrt(2.0);
    return {Complex(0.0, 0.0), Complex(s, 0.0), Complex(-s, 0.0)};
  }
  throw std::invalid_argument("sic_fiducial: shipped only for n = 2, 3");
}

SicReport verify_sic(const SicCandidate& c, double tol) {
  const int n = c.n;
  const int m = static_cast<int>(c.vectors.size());
  SicReport rep;
  if (m != n * n) return rep;

  rep.pure = true;
  for (const auto& psi : c.vectors) {
    double norm = 0.0;
    for (const Complex& z : psi) norm += std::norm(z);
    if (std::abs(norm - 1.0) > tol) rep.pure = false;
  }

  // centering: mean projector = I/n
  ComplexMatrix mean(n);
  for (const auto& psi : c.vectors)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mean.at(i, j) += psi[i] * std::conj(psi[j]);
  mean = Complex(1.0 / m, 0.0) * mean;
  ComplexMatrix center = Complex(1.0 / n, 0.0) * ComplexMatrix::identity(n);
  rep.center_dev = (mean - center).max_abs();
  rep.centered = rep.center_dev <= tol;

  // equidistance via the pairwise overlaps: D_HS^2 = 1 - |<i|j>|^2
  double omin = 1e300, omax = -1e300, osum = 0.0;
  long count = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Complex ip = 0.0;
      for (int k = 0; k < n; ++k) ip += std::conj(c.vectors[i][k]) * c.vectors[j][k];
      const double o = std::norm(ip);
      omin = std::min(omin, o);
      omax = std::max(omax, o);
      osum += o;
      ++count;
    }
  rep.overlap_mean = osum / count;
  rep.overlap_dev = omax - omin;
  rep.distance_dev = rep.overlap_dev;  // monotone in the overlap spread
  rep.equidistant = rep.overlap_dev <= tol;
  return rep;
}

}  // namespace qgeom
