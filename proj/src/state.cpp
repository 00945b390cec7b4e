#include "qgeom/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qgeom/rng.hpp"

namespace qgeom {

DensityMatrix DensityMatrix::from(const HermitianMatrix& m, double pos_tol, double trace_tol) {
  const double tr = m.trace_real();
  if (std::abs(tr - 1.0) > trace_tol)
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr));
  const double lmin = min_eigenvalue(m);
  if (lmin < -pos_tol)
    throw std::invalid_argument("density matrix has eigenvalue " + std::to_string(lmin));
  return DensityMatrix(m);
}

ProbabilityVector ProbabilityVector::from(std::vector<double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-12)
      throw std::invalid_argument("probability vector has negative entry " + std::to_string(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("probability vector sums to " + std::to_string(sum));
  return ProbabilityVector{std::move(p)};
}

StateValidation validate_state(const ComplexMatrix& a, double tol) {
  StateValidation r;
  const int n = a.order();
  double herm_worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      herm_worst = std::max(herm_worst, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  if (herm_worst > 1e-12) {
    r.violation = StateViolation::Hermiticity;
    r.offending = herm_worst;
    r.message = "not Hermitian: max |A - A^dagger| = " + std::to_string(herm_worst);
    return r;
  }
  const HermitianMatrix h = HermitianMatrix::from(a, 1e-9);
  const double tr = h.trace_real();
  if (std::abs(tr - 1.0) > 1e-12) {
    r.violation = StateViolation::Trace;
    r.offending = tr;
    r.message = "trace is " + std::to_string(tr) + ", expected 1";
    return r;
  }
  const double lmin = min_eigenvalue(h);
  if (lmin < -tol) {
    r.violation = StateViolation::Positivity;
    r.offending = lmin;
    r.message = "not positive semi-definite: min eigenvalue " + std::to_string(lmin);
    return r;
  }
  r.state = DensityMatrix::from(h, std::max(tol, 1e-10));
  return r;
}

int rank_of(const DensityMatrix& rho, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("rank_of: tol must be positive");
  const auto e = eig_hermitian(rho.hermitian());
  int r = 0;
  for (double l : e.eigenvalues)
    if (l > tol) ++r;
  return r;
}

MixtureDecomposition eigen_mixture(const DensityMatrix& rho) {
  const int n = rho.order();
  const auto e = eig_hermitian(rho.hermitian());
  std::vector<double> weights;
  std::vector<DensityMatrix> states;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = std::max(0.0, e.eigenvalues[k]);
    if (w <= 1e-12) continue;
    ComplexMatrix proj(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        proj.at(i, j) = e.eigenvectors.at(i, k) * std::conj(e.eigenvectors.at(j, k));
    states.push_back(DensityMatrix::from(HermitianMatrix::from(proj, 1e-9)));
    weights.push_back(w);
    sum += w;
  }
  for (double& w : weights) w /= sum;
  return MixtureDecomposition{ProbabilityVector::from(std::move(weights)), std::move(states)};
}

Radii radii(int n) {
  if (n < 2) throw std::invalid_argument("radii: n must be >= 2");
  const double dn = n;
  return Radii{std::sqrt((dn - 1.0) / (2.0 * dn)), 1.0 / std::sqrt(2.0 * dn * (dn - 1.0))};
}

DensityMatrix random_state(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_state: n must be >= 2");
  Rng rng(seed);
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = rng.complex_gaussian();
  ComplexMatrix w = g * g.adjoint();
  const double tr = w.trace().real();
  w = Complex(1.0 / tr, 0.0) * w;
  return DensityMatrix::from(HermitianMatrix::from(w, 1e-9));
}

DensityMatrix random_pure_state(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_pure_state: n must be >= 2");
  Rng rng(seed);
  std::vector<Complex> psi(n);
  double norm = 0.0;
  for (auto& z : psi) {
    z = rng.complex_gaussian();
    norm += std::norm(z);
  }
  norm = std::sqrt(norm);
  ComplexMatrix proj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) proj.at(i, j) = psi[i] * std::conj(psi[j]) / (norm * norm);
  return DensityMatrix::from(HermitianMatrix::from(proj, 1e-9));
}

DensityMatrix random_boundary_state(int n, std::uint64_t seed) {
  const DensityMatrix rho = random_state(n, seed);
  const auto e = eig_hermitian(rho.hermitian());
  ComplexMatrix m(n);
  double sum = 0.0;
  for (int k = 0; k < n - 1; ++k) sum += e.eigenvalues[k];
  for (int k = 0; k < n - 1; ++k) {
    const double w = e.eigenvalues[k] / sum;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.at(i, j) += w * e.eigenvectors.at(i, k) * std::conj(e.eigenvectors.at(j, k));
  }
  return DensityMatrix::from(HermitianMatrix::from(m, 1e-9));
}

DensityMatrix embed_classical(const ProbabilityVector& p) {
  return DensityMatrix::from(HermitianMatrix::diagonal(p.p));
}

HermitianMatrix dual_face(const HermitianMatrix& projector, double tol) {
  const ComplexMatrix p = projector.matrix();
  const double idem = (p * p - p).frobenius_norm();
  if (idem > tol)
    throw std::invalid_argument("dual_face: input is not idempotent, |P^2 - P| = " +
                                std::to_string(idem));
  return HermitianMatrix::identity(projector.order()) - projector;
}

}  // namespace qgeom
