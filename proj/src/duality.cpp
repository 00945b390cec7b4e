#include "qgeom/duality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgeom/parallel.hpp"
#include "qgeom/rng.hpp"

namespace qgeom {

namespace {

HermitianMatrix traceless_part(const HermitianMatrix& a) {
  const int n = a.order();
  const double t = a.trace_real() / n;
  return a - t * HermitianMatrix::identity(n);
}

HermitianMatrix random_traceless_hermitian(int n, Rng& rng) {
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = rng.complex_gaussian();
  const ComplexMatrix h = Complex(0.5, 0.0) * (g + g.adjoint());
  return traceless_part(HermitianMatrix::from(h, 1e-9));
}

// fills h with the support of the collected points and prunes concave wobble
Boundary2D finish_ray_boundary(int order, std::vector<BoundarySample> samples) {
  // convexity cleanup: drop points that turn the wrong way
  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::hypot(s.point.x, s.point.y));
  const double slack = 1e-14 * scale * scale;
  bool changed = true;
  while (changed && samples.size() > 3) {
    changed = false;
    for (size_t i = 0; i < samples.size() && samples.size() > 3; ++i) {
      const size_t n = samples.size();
      const Vec2& p0 = samples[i % n].point;
      const Vec2& p1 = samples[(i + 1) % n].point;
      const Vec2& p2 = samples[(i + 2) % n].point;
      const Vec2 e1{p1.x - p0.x, p1.y - p0.y};
      const Vec2 e2{p2.x - p1.x, p2.y - p1.y};
      if (cross(e1, e2) < -slack) {
        samples.erase(samples.begin() + static_cast<long>((i + 1) % n));
        changed = true;
      }
    }
  }
  Boundary2D b;
  b.order = order;
  b.kind = BoundaryKind::RayTraced;
  b.samples = std::move(samples);
  for (auto& s : b.samples) s.h = b.support(s.theta);
  return b;
}

}  // namespace

Subspace2D Subspace2D::make(const HermitianMatrix& u, const HermitianMatrix& v) {
  if (u.order() != v.order()) throw std::invalid_argument("Subspace2D: order mismatch");
  if (std::abs(u.trace_real()) > 1e-10 || std::abs(v.trace_real()) > 1e-10)
    throw std::invalid_argument("Subspace2D: directions must be traceless");
  if (std::abs(hs_inner(u, u) - 1.0) > 1e-10 || std::abs(hs_inner(v, v) - 1.0) > 1e-10 ||
      std::abs(hs_inner(u, v)) > 1e-10)
    throw std::invalid_argument("Subspace2D: directions must be HS-orthonormal");
  return Subspace2D{u, v};
}

Subspace2D Subspace2D::orthonormalized(const HermitianMatrix& a, const HermitianMatrix& b) {
  HermitianMatrix u = traceless_part(a);
  const double nu = std::sqrt(hs_inner(u, u));
  if (nu < 1e-12) throw std::invalid_argument("Subspace2D: first direction vanishes");
  u = (1.0 / nu) * u;
  HermitianMatrix v = traceless_part(b);
  v = v - hs_inner(v, u) * u;
  const double nv = std::sqrt(hs_inner(v, v));
  if (nv < 1e-12) throw std::invalid_argument("Subspace2D: directions are collinear");
  v = (1.0 / nv) * v;
  return make(u, v);
}

Subspace2D Subspace2D::random(int n, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      const HermitianMatrix a = random_traceless_hermitian(n, rng);
      const HermitianMatrix b = random_traceless_hermitian(n, rng);
      return orthonormalized(a, b);
    } catch (const std::invalid_argument&) {
      continue;  // essentially improbable collinear draw
    }
  }
  throw std::runtime_error("Subspace2D::random: generation failed");
}

Boundary2D cross_section(const Subspace2D& s, int K) {
  if (K < 2) throw std::invalid_argument("cross_section: K must be >= 2");
  const int n = s.order();
  const double r_out = radii(n).outer;
  const double s_hi = r_out * (1.0 + 1e-6) + 1e-9;
  const HermitianMatrix center = (1.0 / n) * HermitianMatrix::identity(n);

  std::vector<BoundarySample> samples(K);
  parallel_for(K, [&](int i) {
    const double phi = 2.0 * M_PI * i / K;
    const HermitianMatrix g = std::cos(phi) * s.u + std::sin(phi) * s.v;
    if (min_eigenvalue(center + s_hi * g) >= 0.0)
      throw std::runtime_error("cross_section: bracket failure (subspace invariants broken)");
    double lo = 0.0, hi = s_hi;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (min_eigenvalue(center + mid * g) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double radius = 0.5 * (lo + hi);
    samples[i] =
        BoundarySample{phi, 0.0, Vec2{radius * std::cos(phi), radius * std::sin(phi)}};
  });
  Boundary2D b;
  b.order = n;
  b.kind = BoundaryKind::RayTraced;
  b.samples = std::move(samples);
  for (auto& smp : b.samples) smp.h = b.support(smp.theta);
  return b;
}

Boundary2D projection(const Subspace2D& s, int K) {
  // trace the joint range of (u, v): the numerical range of u + iv
  ComplexMatrix a = s.u.matrix() + Complex(0.0, 1.0) * s.v.matrix();
  Boundary2D b = numerical_range(a, K);
  b.order = s.order();
  return b;
}

Boundary2D polar_dual(const Boundary2D& b, double c) {
  if (c <= 0.0) throw std::invalid_argument("polar_dual: c must be positive");
  const int K = static_cast<int>(b.samples.size());
  if (K < 3) throw std::invalid_argument("polar_dual: too few samples");
  double hmin = 1e300;
  for (const auto& s : b.samples) hmin = std::min(hmin, s.h);
  if (hmin <= 1e-12) throw std::invalid_argument("polar_dual: origin not strictly interior");

  std::vector<BoundarySample> out(K);
  const bool aligned = (K % 2) == 0;
  for (int i = 0; i < K; ++i) {
    const double phi = b.samples[i].theta;
    const double h_opp =
        aligned ? b.samples[(i + K / 2) % K].h : b.support(phi + M_PI);
    const double r = c / h_opp;
    out[i] = BoundarySample{phi, 0.0, Vec2{r * std::cos(phi), r * std::sin(phi)}};
  }
  return finish_ray_boundary(b.order, std::move(out));
}

DualityReport verify_duality(const Subspace2D& s, int K) {
  const double c = 1.0 / s.order();
  const Boundary2D section = cross_section(s, K);
  const Boundary2D proj = projection(s, K);
  DualityReport rep;
  rep.K = K;
  rep.hausdorff_cross = hausdorff(section, polar_dual(proj, c));
  rep.hausdorff_proj = hausdorff(proj, polar_dual(section, c));
  return rep;
}

SelfDualityStats self_duality_check(int n, int samples, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("self_duality_check: n must be >= 2");
  std::vector<double> inner(samples);
  parallel_for(samples, [&](int i) {
    const DensityMatrix rho = random_state(n, Rng::stream_seed(seed, 2 * i));
    const DensityMatrix sigma = random_state(n, Rng::stream_seed(seed, 2 * i + 1));
    double t = 0.0;
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k)
        t += (rho.at(r, k) * sigma.at(k, r)).real();
    inner[i] = t;
  });
  SelfDualityStats st;
  st.min_inner = *std::min_element(inner.begin(), inner.end());
  st.max_violation = std::max(0.0, -st.min_inner);
  return st;
}

std::pair<DensityMatrix, double> nonstate_witness(const HermitianMatrix& sigma) {
  if (std::abs(sigma.trace_real() - 1.0) > 1e-10)
    throw std::invalid_argument("nonstate_witness: sigma must have unit trace");
  const auto e = eig_hermitian(sigma);
  const int n = sigma.order();
  const double lmin = e.eigenvalues[n - 1];
  if (lmin >= 0.0)
    throw std::invalid_argument("nonstate_witness: sigma is a state, no witness exists");
  ComplexMatrix proj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      proj.at(i, j) = e.eigenvectors.at(i, n - 1) * std::conj(e.eigenvectors.at(j, n - 1));
  const DensityMatrix rho = DensityMatrix::from(HermitianMatrix::from(proj, 1e-9));
  return {rho, lmin};
}

Subspace3D named_subspace(NamedSection name) {
  ComplexMatrix mu(3), mv(3), mw(3);
  if (name == NamedSection::Elliptope) {
    mu.at(0, 1) = mu.at(1, 0) = 1.0;
    mv.at(0, 2) = mv.at(2, 0) = 1.0;
    mw.at(1, 2) = mw.at(2, 1) = 1.0;
  } else {
    mu.at(0, 1) = mu.at(1, 0) = 1.0;
    mv.at(0, 1) = Complex(0.0, -1.0);
    mv.at(1, 0) = Complex(0.0, 1.0);
    const double d = 1.0 / std::sqrt(3.0);
    mw.at(0, 0) = d;
    mw.at(1, 1) = d;
    mw.at(2, 2) = -2.0 * d;
  }
  return Subspace3D{HermitianMatrix::from(mu), HermitianMatrix::from(mv),
                    HermitianMatrix::from(mw)};
}

namespace {

HermitianMatrix named_point_matrix(const Subspace3D& s, double x, double y, double z) {
  ComplexMatrix m = Complex(1.0 / 3.0, 0.0) * ComplexMatrix::identity(3);
  m = m + Complex(x, 0.0) * s.u.matrix() + Complex(y, 0.0) * s.v.matrix() +
      Complex(z, 0.0) * s.w.matrix();
  return HermitianMatrix::from(m, 1e-9);
}

// deterministic, nearly uniform direction grid
std::vector<std::array<double, 3>> fibonacci_sphere(int K) {
  std::vector<std::array<double, 3>> dirs(K);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < K; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / K;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    dirs[i] = {r * std::cos(a), r * std::sin(a), z};
  }
  return dirs;
}

}  // namespace

bool named_member(NamedSection name, double x, double y, double z, double tol) {
  const Subspace3D s = named_subspace(name);
  return min_eigenvalue(named_point_matrix(s, x, y, z)) >= -tol;
}

int named_rank(NamedSection name, double x, double y, double z) {
  const Subspace3D s = named_subspace(name);
  const auto e = eig_hermitian(named_point_matrix(s, x, y, z));
  int r = 0;
  for (double l : e.eigenvalues)
    if (l > 1e-9) ++r;
  return r;
}

std::vector<std::array<double, 3>> named_section_mesh(NamedSection name, int K) {
  const Subspace3D s = named_subspace(name);
  const auto dirs = fibonacci_sphere(K);
  const double s_hi = radii(3).outer * (1.0 + 1e-6) + 1e-9;
  std::vector<std::array<double, 3>> pts(K);
  parallel_for(K, [&](int i) {
    const auto& d = dirs[i];
    double lo = 0.0, hi = s_hi;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (min_eigenvalue(named_point_matrix(s, mid * d[0], mid * d[1], mid * d[2])) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double r = 0.5 * (lo + hi);
    pts[i] = {r * d[0], r * d[1], r * d[2]};
  });
  return pts;
}

std::vector<std::array<double, 3>> named_projection_points(NamedSection name, int K) {
  const Subspace3D s = named_subspace(name);
  const auto dirs = fibonacci_sphere(K);
  std::vector<std::array<double, 3>> pts(K);
  parallel_for(K, [&](int i) {
    const auto& d = dirs[i];
    const HermitianMatrix f = d[0] * s.u + d[1] * s.v + d[2] * s.w;
    const auto e = eig_hermitian(f);
    std::vector<Complex> psi(3);
    for (int r = 0; r < 3; ++r) psi[r] = e.eigenvectors.at(r, 0);
    auto expect = [&](const HermitianMatrix& m) {
      Complex acc = 0.0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) acc += std::conj(psi[r]) * m.at(r, c) * psi[c];
      return 0.5 * acc.real();  // HS coordinate
    };
    pts[i] = {expect(s.u), expect(s.v), expect(s.w)};
  });
  return pts;
}

double named_self_duality_gap(NamedSection name, int K) {
  const Subspace3D s = named_subspace(name);
  const auto pts = named_projection_points(name, K);
  double worst = 0.0;
  for (const auto& p : pts) {
    const double lmin = min_eigenvalue(named_point_matrix(s, p[0], p[1], p[2]));
    const double mu = std::max(0.0, -lmin);
    if (mu == 0.0) continue;
    const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    worst = std::max(worst, mu / (1.0 / 3.0 + mu) * norm);
  }
  return worst;
}

Subspace2D cone_slice_plane(ConeSlice kind) {
  const Subspace3D s = named_subspace(NamedSection::Cone);
  double alpha = 0.0;
  switch (kind) {
    case ConeSlice::Elliptic: alpha = 35.0 * M_PI / 180.0; break;
    case ConeSlice::Parabolic: alpha = 60.0 * M_PI / 180.0; break;
    case ConeSlice::Hyperbolic: alpha = 75.0 * M_PI / 180.0; break;
  }
  const HermitianMatrix tilted = std::cos(alpha) * s.v + std::sin(alpha) * s.w;
  return Subspace2D::make(s.u, tilted);
}

Subspace2D diagonal_plane_n3() {
  const auto basis = gell_mann_basis(3);
  // diagonal ladder directions are the last two basis elements
  return Subspace2D::make(basis[6], basis[7]);
}

}  // namespace qgeom
