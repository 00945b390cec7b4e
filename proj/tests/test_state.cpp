#include <doctest.h>

#include <cmath>

#include "qgeom/rng.hpp"
#include "qgeom/state.hpp"

using namespace qgeom;

TEST_CASE("validate_state") {
  SUBCASE("maximally mixed is valid") {
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i) m.at(i, i) = 1.0 / 3.0;
    const auto r = validate_state(m);
    CHECK(r.ok());
    CHECK(r.state.has_value());
  }
  SUBCASE("positivity violation reports the offending eigenvalue") {
    ComplexMatrix m(2);
    m.at(0, 0) = 1.5;
    m.at(1, 1) = -0.5;
    const auto r = validate_state(m);
    CHECK(r.violation == StateViolation::Positivity);
    CHECK(r.offending == doctest::Approx(-0.5).epsilon(1e-12));
  }
  SUBCASE("trace violation") {
    ComplexMatrix m(2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = 0.5;
    const auto r = validate_state(m);
    CHECK(r.violation == StateViolation::Trace);
    CHECK(r.offending == doctest::Approx(1.5));
  }
  SUBCASE("hermiticity violation") {
    ComplexMatrix m(2);
    m.at(0, 0) = 0.5;
    m.at(1, 1) = 0.5;
    m.at(0, 1) = Complex(0.0, 0.3);
    m.at(1, 0) = Complex(0.0, 0.3);  // conjugate would be -0.3i
    const auto r = validate_state(m);
    CHECK(r.violation == StateViolation::Hermiticity);
  }
  SUBCASE("vertex of the elliptope is a rank-one state") {
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.at(i, j) = 1.0 / 3.0;
    const auto r = validate_state(m);
    REQUIRE(r.ok());
    CHECK(rank_of(*r.state) == 1);
  }
}

TEST_CASE("rank_of") {
  CHECK(rank_of(DensityMatrix::from(HermitianMatrix::diagonal({1.0, 0.0, 0.0}))) == 1);
  const int n = 4;
  std::vector<double> unif(n, 1.0 / n);
  CHECK(rank_of(DensityMatrix::from(HermitianMatrix::diagonal(unif))) == n);
  CHECK(rank_of(DensityMatrix::from(HermitianMatrix::diagonal({0.5, 0.5, 0.0}))) == 2);
}

TEST_CASE("eigen_mixture") {
  SUBCASE("diagonal input returns its spectrum") {
    const auto mix = eigen_mixture(DensityMatrix::from(HermitianMatrix::diagonal({0.5, 0.3, 0.2})));
    REQUIRE(mix.weights.p.size() == 3);
    CHECK(mix.weights.p[0] == doctest::Approx(0.5));
    CHECK(mix.weights.p[1] == doctest::Approx(0.3));
    CHECK(mix.weights.p[2] == doctest::Approx(0.2));
    for (const auto& s : mix.states) CHECK(rank_of(s) == 1);
  }
  SUBCASE("pure state returns weight one") {
    const auto mix = eigen_mixture(random_pure_state(3, 7));
    REQUIRE(mix.weights.p.size() == 1);
    CHECK(mix.weights.p[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("random state: orthogonality and reconstruction") {
    const auto rho = random_state(4, 99);
    const auto mix = eigen_mixture(rho);
    const int k = static_cast<int>(mix.states.size());
    CHECK(k <= 4);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        double ip = 0.0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            ip += (mix.states[i].at(a, b) * mix.states[j].at(b, a)).real();
        CHECK(std::abs(ip) < 1e-10);
      }
    ComplexMatrix recon(4);
    for (int i = 0; i < k; ++i)
      recon = recon + Complex(mix.weights.p[i], 0.0) * mix.states[i].hermitian().matrix();
    CHECK((recon - rho.hermitian().matrix()).max_abs() < 1e-10);
  }
}

TEST_CASE("radii") {
  const auto r2 = radii(2);
  CHECK(r2.outer == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r2.inner == doctest::Approx(0.5).epsilon(1e-15));
  const auto r3 = radii(3);
  CHECK(r3.outer == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(r3.inner == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-15));
  for (int n = 2; n <= 8; ++n) {
    const auto r = radii(n);
    CHECK(std::abs(r.outer / r.inner - (n - 1)) < 1e-12);
  }
  CHECK_THROWS_AS(radii(1), std::invalid_argument);
}

TEST_CASE("pure states sit on the outsphere") {
  for (int n = 2; n <= 6; ++n) {
    const HermitianMatrix center = (1.0 / n) * HermitianMatrix::identity(n);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto psi = random_pure_state(n, 5000 + 100 * n + s);
      CHECK(std::abs(hs_distance(psi.hermitian(), center) - radii(n).outer) < 1e-10);
    }
  }
}

TEST_CASE("random_state determinism and spread") {
  const auto a = random_state(3, 1);
  const auto b = random_state(3, 1);
  CHECK((a.hermitian().matrix() - b.hermitian().matrix()).max_abs() == 0.0);
  const auto c = random_state(3, 2);
  CHECK((a.hermitian().matrix() - c.hermitian().matrix()).max_abs() > 1e-3);
}

TEST_CASE("random_state mean Bloch vector vanishes within sampling error") {
  const int samples = 10000;
  double mean[3] = {0.0, 0.0, 0.0};
  double sq[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < samples; ++i) {
    const auto rho = random_state(2, 31000 + i);
    const auto c = bloch_coords(rho.hermitian());
    for (int k = 0; k < 3; ++k) {
      mean[k] += c.coords[k];
      sq[k] += c.coords[k] * c.coords[k];
    }
  }
  double norm2 = 0.0, var = 0.0;
  for (int k = 0; k < 3; ++k) {
    mean[k] /= samples;
    norm2 += mean[k] * mean[k];
    var += sq[k] / samples - mean[k] * mean[k];
  }
  const double se = std::sqrt(var / samples);
  CHECK(std::sqrt(norm2) < 3.0 * se);
}

TEST_CASE("embed_classical") {
  const auto p = ProbabilityVector::from({1.0, 0.0, 0.0});
  const auto rho = embed_classical(p);
  CHECK(rho.at(0, 0).real() == doctest::Approx(1.0));
  CHECK(rank_of(rho) == 1);

  // distance between two classical pure states is one
  const auto q = ProbabilityVector::from({0.0, 1.0, 0.0});
  CHECK(hs_distance(embed_classical(p).hermitian(), embed_classical(q).hermitian()) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // the embedding is an isometry onto the simplex
  Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    std::vector<double> a(4), b(4);
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.uniform();
      b[i] = rng.uniform();
      sa += a[i];
      sb += b[i];
    }
    for (int i = 0; i < 4; ++i) {
      a[i] /= sa;
      b[i] /= sb;
    }
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    const double expected = std::sqrt(0.5 * d2);
    const double got = hs_distance(embed_classical(ProbabilityVector::from(a)).hermitian(),
                                   embed_classical(ProbabilityVector::from(b)).hermitian());
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  }

  // uniform distribution embeds to the maximally mixed state
  const auto u = embed_classical(ProbabilityVector::from({0.25, 0.25, 0.25, 0.25}));
  CHECK((u.hermitian().matrix() - (0.25 * HermitianMatrix::identity(4)).matrix()).max_abs() <
        1e-15);
}

TEST_CASE("dual_face") {
  const auto p = HermitianMatrix::diagonal({1.0, 0.0, 0.0});
  const auto comp = dual_face(p);
  CHECK(comp.trace_real() == doctest::Approx(2.0));
  // involution
  const auto back = dual_face(comp);
  CHECK((back.matrix() - p.matrix()).max_abs() < 1e-14);
  // non-idempotent input rejected
  CHECK_THROWS_AS(dual_face(HermitianMatrix::diagonal({0.5, 0.0, 0.0})), std::invalid_argument);

  // states confined to the complement subspace annihilate P
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_state(3, 6000 + s);
    // compress rho onto the complement and renormalize
    ComplexMatrix m(3);
    for (int i = 1; i < 3; ++i)
      for (int j = 1; j < 3; ++j) m.at(i, j) = rho.at(i, j);
    double tr = 0.0;
    for (int i = 0; i < 3; ++i) tr += m.at(i, i).real();
    m = Complex(1.0 / tr, 0.0) * m;
    const auto sigma = DensityMatrix::from(HermitianMatrix::from(m, 1e-9));
    double overlap = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) overlap += (sigma.at(i, j) * p.at(j, i)).real();
    CHECK(std::abs(overlap) < 1e-12);
  }
}

TEST_CASE("convexity: mixtures of states validate") {
  Rng rng(11);
  for (std::uint64_t s = 0; s < 25; ++s) {
    const auto rho = random_state(3, 7000 + s);
    const auto sig = random_state(3, 8000 + s);
    const double a = rng.uniform();
    ComplexMatrix mix(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        mix.at(i, j) = a * rho.at(i, j) + (1.0 - a) * sig.at(i, j);
    CHECK(validate_state(mix).ok());
  }
}

TEST_CASE("insphere tangency of boundary faces") {
  for (int n : {3, 4}) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      const auto rho = random_boundary_state(n, 9000 + 100 * n + s);
      CHECK(rank_of(rho) == n - 1);
      // kernel projector
      const auto e = eig_hermitian(rho.hermitian());
      ComplexMatrix proj(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          proj.at(i, j) = e.eigenvectors.at(i, n - 1) * std::conj(e.eigenvectors.at(j, n - 1));
      const auto p = HermitianMatrix::from(proj, 1e-9);
      // distance from I/n to the hyperplane {Tr(sigma P) = 0} within the
      // unit-trace slice: (Tr P / n) / (2 |traceless part of P|)
      const auto p0 = p - (p.trace_real() / n) * HermitianMatrix::identity(n);
      const double dist = (p.trace_real() / n) / (2.0 * std::sqrt(hs_inner(p0, p0)));
      CHECK(std::abs(dist - radii(n).inner) < 1e-10);
    }
  }
}

TEST_CASE("random points of the outsphere are almost never states") {
  // pure states are a measure-zero subset of the outsphere once n >= 3
  const int n = 3;
  int failures = 0;
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) {
    Rng rng(77000 + i);
    ComplexMatrix g(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g.at(a, b) = rng.complex_gaussian();
    auto h = HermitianMatrix::from(Complex(0.5, 0.0) * (g + g.adjoint()), 1e-9);
    h = h - (h.trace_real() / n) * HermitianMatrix::identity(n);
    const double norm = std::sqrt(hs_inner(h, h));
    const auto point =
        (1.0 / n) * HermitianMatrix::identity(n) + (radii(n).outer / norm) * h;
    if (!validate_state(point.matrix()).ok()) ++failures;
  }
  CHECK(failures == samples);
}

TEST_CASE("constant-height identity at n = 2") {
  // the qubit state space is a ball of radius 1/2: r A / V = 3 = d
  const double r = radii(2).inner;
  const double area = 4.0 * M_PI * r * r;
  const double volume = 4.0 * M_PI * r * r * r / 3.0;
  CHECK(r * area / volume == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(2 * 2 - 1 == 3);
}
