#include <doctest.h>

#include <cmath>

#include "qgeom/duality.hpp"
#include "qgeom/rng.hpp"

using namespace qgeom;

namespace {

Boundary2D ellipse_boundary(double a, double b, double tilt, int K) {
  Boundary2D out;
  out.order = 0;
  out.kind = BoundaryKind::RayTraced;
  out.samples.resize(K);
  for (int i = 0; i < K; ++i) {
    const double phi = 2.0 * M_PI * i / K;
    const double ca = std::cos(phi - tilt), sa = std::sin(phi - tilt);
    const double r = a * b / std::sqrt(b * b * ca * ca + a * a * sa * sa);
    out.samples[i] = BoundarySample{phi, 0.0, Vec2{r * std::cos(phi), r * std::sin(phi)}};
  }
  for (auto& s : out.samples) s.h = out.support(s.theta);
  return out;
}

}  // namespace

TEST_CASE("Subspace2D validation") {
  const auto basis = gell_mann_basis(3);
  CHECK_NOTHROW(Subspace2D::make(basis[0], basis[1]));
  CHECK_THROWS_AS(Subspace2D::make(basis[0], basis[0]), std::invalid_argument);
  CHECK_THROWS_AS(Subspace2D::make(basis[0], 2.0 * basis[1]), std::invalid_argument);
  const auto s = Subspace2D::random(3, 42);
  CHECK(std::abs(hs_inner(s.u, s.u) - 1.0) < 1e-12);
  CHECK(std::abs(hs_inner(s.v, s.v) - 1.0) < 1e-12);
  CHECK(std::abs(hs_inner(s.u, s.v)) < 1e-12);
}

TEST_CASE("cross_section of the diagonal plane is the classical triangle") {
  const auto u = diagonal_plane_n3();
  // grid aligned with the vertex angles 30, 150, 270 degrees
  const auto b = cross_section(u, 12);
  REQUIRE(b.samples.size() == 12);
  const double big = radii(3).outer;
  const double small = radii(3).inner;
  // circumradius attained at the vertex rays
  for (int k : {1, 5, 9}) {
    const double r = std::hypot(b.samples[k].point.x, b.samples[k].point.y);
    CHECK(std::abs(r - big) < 1e-10);
  }
  // inradius attained at the edge normals; equals half the circumradius
  for (double psi : {M_PI / 2.0, M_PI * 7.0 / 6.0, M_PI * 11.0 / 6.0})
    CHECK(std::abs(b.support(psi) - small) < 1e-10);
  CHECK(std::abs(big - 2.0 * small) < 1e-14);
}

TEST_CASE("cross_section stays between the in- and outsphere") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto u = Subspace2D::random(3, 9100 + s);
    const auto b = cross_section(u, 128);
    for (const auto& smp : b.samples) {
      const double r = std::hypot(smp.point.x, smp.point.y);
      CHECK(r >= radii(3).inner - 1e-9);
      CHECK(r <= radii(3).outer + 1e-9);
    }
    // supporting lines never cut the inscribed disk
    for (const auto& smp : b.samples) CHECK(b.support(smp.theta) >= radii(3).inner - 1e-9);
    CHECK(support_consistency_gap(b) < 1e-8);
    CHECK(is_convex_ordered(b));
  }
}

TEST_CASE("cross_section of the elliptope's xy-plane") {
  const auto named = named_subspace(NamedSection::Elliptope);
  const auto s = Subspace2D::make(named.u, named.v);
  const auto b = cross_section(s, 16);
  // at phi = 0 the maximal x with [[1/3, x, 0], [x, 1/3, 0], [0, 0, 1/3]]
  // positive semi-definite is exactly 1/3
  CHECK(std::abs(b.samples[0].point.x - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(b.samples[0].point.y) < 1e-15);
}

TEST_CASE("cross_section allows the one-dimensional pedagogical case") {
  const auto u = diagonal_plane_n3();
  const auto b = cross_section(u, 2);
  REQUIRE(b.samples.size() == 2);
  // the ray along diag(1, -1, 0) exits at s = 1/3 both ways
  CHECK(std::abs(std::hypot(b.samples[0].point.x, b.samples[0].point.y) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(std::hypot(b.samples[1].point.x, b.samples[1].point.y) - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("the section center is interior") {
  const auto u = Subspace2D::random(3, 31);
  // minimum eigenvalue of I/3 is 1/3 > 0, so every ray has positive radius
  const auto b = cross_section(u, 32);
  for (const auto& s : b.samples) CHECK(std::hypot(s.point.x, s.point.y) > radii(3).inner / 2.0);
}

TEST_CASE("polar_dual of a centered disk") {
  const auto disk = ellipse_boundary(0.7, 0.7, 0.0, 256);
  const auto dual = polar_dual(disk, 1.0);
  for (const auto& s : dual.samples)
    CHECK(std::hypot(s.point.x, s.point.y) == doctest::Approx(1.0 / 0.7).epsilon(1e-6));
}

TEST_CASE("polar_dual is an involution") {
  const auto b = ellipse_boundary(0.9, 0.5, 0.6, 4096);
  for (double c : {1.0, 1.0 / 3.0}) {
    const auto twice = polar_dual(polar_dual(b, c), c);
    CHECK(hausdorff(b, twice) < 1e-6);
  }
}

TEST_CASE("polar_dual requires an interior origin") {
  Boundary2D segment;
  segment.order = 2;
  segment.kind = BoundaryKind::RayTraced;
  for (int i = 0; i < 8; ++i) {
    const double phi = 2.0 * M_PI * i / 8;
    segment.samples.push_back(BoundarySample{phi, 0.0, Vec2{std::cos(phi), 0.0}});
  }
  for (auto& s : segment.samples) s.h = segment.support(s.theta);
  CHECK_THROWS_AS(polar_dual(segment, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(polar_dual(ellipse_boundary(1, 1, 0, 64), 0.0), std::invalid_argument);
}

TEST_CASE("projection of the diagonal plane is the doubled triangle") {
  const auto u = diagonal_plane_n3();
  const auto b = projection(u, 512);
  CHECK(b.kind == BoundaryKind::SupportTraced);
  double reach = 0.0;
  for (const auto& s : b.samples) reach = std::max(reach, std::hypot(s.point.x, s.point.y));
  // trace coordinates: circumradius is twice the section's
  CHECK(reach == doctest::Approx(2.0 * radii(3).outer).epsilon(1e-10));
}

TEST_CASE("numerical range of a unit-trace matrix is an affine copy of the projection") {
  const auto s = Subspace2D::random(3, 77);
  ComplexMatrix a = s.u.matrix() + Complex(0.0, 1.0) * s.v.matrix();
  a = a + Complex(1.0 / 3.0, 0.0) * ComplexMatrix::identity(3);
  const auto range = numerical_range(a, 256);
  auto proj = projection(s, 256);
  for (auto& smp : proj.samples) smp.point.x += 1.0 / 3.0;  // shift by the trace part
  CHECK(hausdorff(range, proj) < 1e-6);
}

TEST_CASE("duality theorem on random subspaces") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto u = Subspace2D::random(3, 52000 + s);
    const auto rep512 = verify_duality(u, 512);
    CHECK(rep512.hausdorff_cross < 1e-3);
    CHECK(rep512.hausdorff_proj < 1e-3);
    const auto rep1024 = verify_duality(u, 1024);
    CHECK(rep1024.hausdorff_cross <= rep512.hausdorff_cross + 1e-12);
    CHECK(rep1024.hausdorff_proj <= rep512.hausdorff_proj + 1e-12);
  }
}

TEST_CASE("sections report no non-exposed points") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto u = Subspace2D::random(3, 61000 + s);
    const auto b = cross_section(u, 512);
    const auto f = boundary_features(b, u.u, u.v);
    CHECK(f.nonexposed.empty());
  }
  // also on the cornered special sections
  for (auto kind : {ConeSlice::Elliptic, ConeSlice::Parabolic, ConeSlice::Hyperbolic}) {
    const auto u = cone_slice_plane(kind);
    const auto b = cross_section(u, 512);
    const auto f = boundary_features(b, u.u, u.v);
    CHECK(f.nonexposed.empty());
  }
  const auto tri = diagonal_plane_n3();
  const auto f = boundary_features(cross_section(tri, 512), tri.u, tri.v);
  CHECK(f.nonexposed.empty());
}

TEST_CASE("the hyperbolic cone slice has a non-polyhedral corner") {
  const auto u = cone_slice_plane(ConeSlice::Hyperbolic);
  const auto b = cross_section(u, 512);
  const auto f = boundary_features(b, u.u, u.v);
  REQUIRE_FALSE(f.corners.empty());
  bool any_non_polyhedral = false;
  for (const auto& c : f.corners)
    if (!c.polyhedral) any_non_polyhedral = true;
  CHECK(any_non_polyhedral);
}

TEST_CASE("the diagonal-plane triangle section has polyhedral corners") {
  const auto u = diagonal_plane_n3();
  const auto b = cross_section(u, 768);
  const auto f = boundary_features(b, u.u, u.v);
  CHECK(f.flats.size() == 3);
  REQUIRE(f.corners.size() == 3);
  for (const auto& c : f.corners) CHECK(c.polyhedral);
}

TEST_CASE("self-duality of the state set under sampling") {
  for (int n : {2, 3, 4}) {
    const auto st = self_duality_check(n, 500, 12345 + n);
    CHECK(st.min_inner >= -1e-10);
    CHECK(st.max_violation <= 1e-10);
  }
}

TEST_CASE("trace inner product extremes") {
  // orthogonal pure states meet the bound with equality
  const auto p = embed_classical(ProbabilityVector::from({1.0, 0.0}));
  const auto q = embed_classical(ProbabilityVector::from({0.0, 1.0}));
  double t = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t += (p.at(i, j) * q.at(j, i)).real();
  CHECK(t == doctest::Approx(0.0));
  // identical pure states give one
  double tt = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) tt += (p.at(i, j) * p.at(j, i)).real();
  CHECK(tt == doctest::Approx(1.0));
}

TEST_CASE("nonstate_witness") {
  const auto sigma = HermitianMatrix::diagonal({1.2, -0.2});
  const auto [rho, value] = nonstate_witness(sigma);
  CHECK(value == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(rho.at(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(nonstate_witness(HermitianMatrix::diagonal({0.5, 0.5})),
                  std::invalid_argument);
}

TEST_CASE("named sections: elliptope") {
  CHECK(named_member(NamedSection::Elliptope, 0.0, 0.0, 0.0));
  const double v = 1.0 / 3.0;
  for (const auto& signs :
       {std::array<double, 3>{1, 1, 1}, std::array<double, 3>{1, -1, -1},
        std::array<double, 3>{-1, 1, -1}, std::array<double, 3>{-1, -1, 1}}) {
    CHECK(named_member(NamedSection::Elliptope, v * signs[0], v * signs[1], v * signs[2]));
    CHECK(named_rank(NamedSection::Elliptope, v * signs[0], v * signs[1], v * signs[2]) == 1);
  }
  CHECK_FALSE(named_member(NamedSection::Elliptope, 0.4, 0.4, 0.4));
  // interior point has full rank
  CHECK(named_rank(NamedSection::Elliptope, 0.0, 0.0, 0.0) == 3);
}

TEST_CASE("named sections: cone") {
  const double apex_z = -1.0 / std::sqrt(3.0);
  CHECK(named_member(NamedSection::Cone, 0.0, 0.0, apex_z));
  CHECK(named_rank(NamedSection::Cone, 0.0, 0.0, apex_z) == 1);
  CHECK_FALSE(named_member(NamedSection::Cone, 0.0, 0.0, apex_z - 1e-6));
  CHECK_FALSE(named_member(NamedSection::Cone, 0.3, 0.0, apex_z + 0.05));
}

TEST_CASE("named section meshes lie on the boundary") {
  for (auto name : {NamedSection::Elliptope, NamedSection::Cone}) {
    const auto mesh = named_section_mesh(name, 200);
    const auto s = named_subspace(name);
    for (const auto& p : mesh) {
      ComplexMatrix m = Complex(1.0 / 3.0, 0.0) * ComplexMatrix::identity(3);
      m = m + Complex(p[0], 0.0) * s.u.matrix() + Complex(p[1], 0.0) * s.v.matrix() +
          Complex(p[2], 0.0) * s.w.matrix();
      const double lmin = min_eigenvalue(HermitianMatrix::from(m, 1e-9));
      CHECK(std::abs(lmin) < 1e-12);
    }
  }
}

TEST_CASE("the cone is self-dual, the elliptope is not") {
  CHECK(named_self_duality_gap(NamedSection::Cone, 512) < 1e-6);
  CHECK(named_self_duality_gap(NamedSection::Elliptope, 512) > 1e-2);
}
