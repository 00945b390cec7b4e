#ifndef QGEOM_STATE_HPP
#define QGEOM_STATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgeom/herm.hpp"

namespace qgeom {

// Unit-trace positive semi-definite Hermitian matrix. Construction enforces
// |Tr - 1| <= 1e-12 and min eigenvalue >= -1e-10.
class DensityMatrix {
 public:
  static DensityMatrix from(const HermitianMatrix& m, double pos_tol = 1e-10,
                            double trace_tol = 1e-12);

  int order() const { return m_.order(); }
  const HermitianMatrix& hermitian() const { return m_; }
  const Complex& at(int i, int j) const { return m_.at(i, j); }

 private:
  explicit DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {}
  HermitianMatrix m_;
};

struct ProbabilityVector {
  std::vector<double> p;
  // validates p_i >= -1e-12 and sum = 1 to 1e-12
  static ProbabilityVector from(std::vector<double> p);
};

struct MixtureDecomposition {
  ProbabilityVector weights;
  std::vector<DensityMatrix> states;  // rank-1, mutually orthogonal
};

enum class StateViolation { None, Hermiticity, Trace, Positivity };

struct StateValidation {
  StateViolation violation = StateViolation::None;
  double offending = 0.0;  // worst offending value for the violated condition
  std::string message;
  std::optional<DensityMatrix> state;
  bool ok() const { return violation == StateViolation::None; }
};

// Checks hermiticity (1e-12), unit trace (1e-12) and positivity (min
// eigenvalue >= -tol), in that order; reports the first violation.
StateValidation validate_state(const ComplexMatrix& a, double tol = 1e-10);

// number of eigenvalues above tol
int rank_of(const DensityMatrix& rho, double tol = 1e-9);

// Spectral decomposition into at most N orthogonal pure states.
MixtureDecomposition eigen_mixture(const DensityMatrix& rho);

struct Radii {
  double outer;  // sqrt((n-1)/(2n))
  double inner;  // 1/sqrt(2n(n-1))
};
Radii radii(int n);

// rho = G G^† / Tr(G G^†) with G a matrix of independent standard complex
// Gaussians; deterministic per seed (Hilbert-Schmidt measure).
DensityMatrix random_state(int n, std::uint64_t seed);

// projector onto a Gaussian random unit vector
DensityMatrix random_pure_state(int n, std::uint64_t seed);

// random state with its smallest eigenvalue zeroed and the rest renormalized
DensityMatrix random_boundary_state(int n, std::uint64_t seed);

// diag(p); isometric embedding of the probability simplex
DensityMatrix embed_classical(const ProbabilityVector& p);

// Complement projector I - P of an orthogonal projector (P^2 = P to tol).
// The face {sigma : Tr(sigma P) = 0} it exposes is a copy of Q_{n-k}.
HermitianMatrix dual_face(const HermitianMatrix& projector, double tol = 1e-10);

}  // namespace qgeom

#endif
