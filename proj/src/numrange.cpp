#include "qgeom/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgeom/parallel.hpp"

namespace qgeom {

double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double dist(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }
double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

double FlatSegment::length() const { return dist(a, b); }

double Boundary2D::support(double theta) const {
  const Vec2 e{std::cos(theta), std::sin(theta)};
  double h = -1e300;
  for (const auto& s : samples) h = std::max(h, dot(s.point, e));
  return h;
}

double support_consistency_gap(const Boundary2D& b) {
  double worst = 0.0;
  for (const auto& s : b.samples) worst = std::max(worst, std::abs(s.h - b.support(s.theta)));
  return worst;
}

bool is_convex_ordered(const Boundary2D& b, double slack) {
  const auto& s = b.samples;
  const int n = static_cast<int>(s.size());
  if (n < 4) return true;
  for (int i = 0; i < n; ++i) {
    const Vec2& p0 = s[i].point;
    const Vec2& p1 = s[(i + 1) % n].point;
    const Vec2& p2 = s[(i + 2) % n].point;
    const Vec2 e1{p1.x - p0.x, p1.y - p0.y};
    const Vec2 e2{p2.x - p1.x, p2.y - p1.y};
    if (cross(e1, e2) < -slack) return false;
  }
  return true;
}

namespace {

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab{b.x - a.x, b.y - a.y};
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, Vec2{a.x + t * ab.x, a.y + t * ab.y});
}

double directed_hausdorff(const Boundary2D& a, const Boundary2D& b) {
  const int nb = static_cast<int>(b.samples.size());
  double worst = 0.0;
  for (const auto& s : a.samples) {
    double best = 1e300;
    for (int j = 0; j < nb; ++j) {
      best = std::min(best, point_segment_dist(s.point, b.samples[j].point,
                                               b.samples[(j + 1) % nb].point));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const Boundary2D& a, const Boundary2D& b) {
  if (a.samples.empty() || b.samples.empty())
    throw std::invalid_argument("hausdorff: empty boundary");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

SupportPoint support_point(const HermitianMatrix& u, const HermitianMatrix& v, double theta) {
  if (u.order() != v.order()) throw std::invalid_argument("support_point: order mismatch");
  if (std::abs(u.trace_real()) > 1e-10 || std::abs(v.trace_real()) > 1e-10)
    throw std::invalid_argument("support_point: u, v must be traceless");
  if (u.frobenius_norm() + v.frobenius_norm() < 1e-14)
    throw std::invalid_argument("support_point: u = v = 0");
  const HermitianMatrix f = std::cos(theta) * u + std::sin(theta) * v;
  const auto e = eig_hermitian(f);
  const int n = u.order();
  std::vector<Complex> psi(n);
  for (int i = 0; i < n; ++i) psi[i] = e.eigenvectors.at(i, 0);
  auto expectation = [&](const HermitianMatrix& m) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += std::conj(psi[i]) * m.at(i, j) * psi[j];
    return s.real();
  };
  return SupportPoint{e.eigenvalues[0], Vec2{expectation(u), expectation(v)}};
}

Boundary2D numerical_range(const ComplexMatrix& a, int K) {
  if (K < 16) throw std::invalid_argument("numerical_range: K must be >= 16");
  const int n = a.order();
  const Complex lambda = a.trace() / Complex(static_cast<double>(n), 0.0);
  ComplexMatrix a0 = a - lambda * ComplexMatrix::identity(n);
  const ComplexMatrix adj = a0.adjoint();
  const HermitianMatrix u = HermitianMatrix::from(Complex(0.5, 0.0) * (a0 + adj), 1e-9);
  const HermitianMatrix v =
      HermitianMatrix::from(Complex(0.0, -0.5) * (a0 - adj), 1e-9);

  Boundary2D b;
  b.order = n;
  b.kind = BoundaryKind::SupportTraced;
  b.samples.resize(K);
  parallel_for(K, [&](int i) {
    const double theta = 2.0 * M_PI * i / K;
    const SupportPoint sp = support_point(u, v, theta);
    b.samples[i] = BoundarySample{
        theta, sp.h + lambda.real() * std::cos(theta) + lambda.imag() * std::sin(theta),
        Vec2{sp.point.x + lambda.real(), sp.point.y + lambda.imag()}};
  });
  return b;
}

namespace {

constexpr FeatureTolerances kTol{};

struct SplitParts {
  Complex shift;
  HermitianMatrix u, v;
};

SplitParts split_matrix(const ComplexMatrix& a) {
  const int n = a.order();
  const Complex lambda = a.trace() / Complex(static_cast<double>(n), 0.0);
  ComplexMatrix a0 = a - lambda * ComplexMatrix::identity(n);
  const ComplexMatrix adj = a0.adjoint();
  return SplitParts{lambda, HermitianMatrix::from(Complex(0.5, 0.0) * (a0 + adj), 1e-9),
                    HermitianMatrix::from(Complex(0.0, -0.5) * (a0 - adj), 1e-9)};
}

double top_gap(const HermitianMatrix& u, const HermitianMatrix& v, double theta) {
  const HermitianMatrix f = std::cos(theta) * u + std::sin(theta) * v;
  const auto e = eig_hermitian(f);
  return e.eigenvalues[0] - e.eigenvalues[1];
}

// golden-section minimization of the top eigenvalue gap on [lo, hi]
double refine_gap_minimum(const HermitianMatrix& u, const HermitianMatrix& v, double lo,
                          double hi) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = top_gap(u, v, x1);
  double f2 = top_gap(u, v, x2);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = top_gap(u, v, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = top_gap(u, v, x2);
    }
  }
  return 0.5 * (a + b);
}

// Flat of the support-traced boundary at normal theta*, described by the
// joint range of (u, v) compressed to the (near-)degenerate top eigenspace.
bool flat_at(const HermitianMatrix& u, const HermitianMatrix& v, double theta, double scale,
             FlatSegment* out) {
  const HermitianMatrix f = std::cos(theta) * u + std::sin(theta) * v;
  const auto e = eig_hermitian(f);
  const int n = u.order();
  const double gap_tol = kTol.gap_rel * std::max(1.0, scale);
  int m = 1;
  while (m < n && e.eigenvalues[0] - e.eigenvalues[m] < gap_tol) ++m;
  if (m < 2) return false;

  auto compress = [&](const HermitianMatrix& op) {
    ComplexMatrix c(m);
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) {
        Complex acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            acc += std::conj(e.eigenvectors.at(i, r)) * op.at(i, j) * e.eigenvectors.at(j, s);
        c.at(r, s) = acc;
      }
    return HermitianMatrix::from(c, 1e-8);
  };
  const HermitianMatrix cu = compress(u);
  const HermitianMatrix cv = compress(v);
  // tangential extent along (-sin, cos)
  const HermitianMatrix t = -std::sin(theta) * cu + std::cos(theta) * cv;
  const auto te = eig_hermitian(t);
  if (te.eigenvalues.front() - te.eigenvalues.back() <= kTol.flat_tol) return false;

  auto endpoint = [&](int col) {
    std::vector<Complex> chi(m);
    for (int i = 0; i < m; ++i) chi[i] = te.eigenvectors.at(i, col);
    auto expect = [&](const HermitianMatrix& op) {
      Complex s = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s += std::conj(chi[i]) * op.at(i, j) * chi[j];
      return s.real();
    };
    return Vec2{expect(cu), expect(cv)};
  };
  out->normal = theta;
  out->a = endpoint(m - 1);
  out->b = endpoint(0);
  return true;
}

std::vector<FlatSegment> detect_flats_support(const HermitianMatrix& u, const HermitianMatrix& v,
                                              int K) {
  const double scale = std::max(u.frobenius_norm(), v.frobenius_norm());
  const double step = 2.0 * M_PI / K;

  std::vector<double> gaps(K);
  std::vector<Vec2> pts(K);
  parallel_for(K, [&](int i) {
    const double theta = step * i;
    const HermitianMatrix f = std::cos(theta) * u + std::sin(theta) * v;
    const auto e = eig_hermitian(f);
    gaps[i] = e.eigenvalues[0] - e.eigenvalues[1];
    const int n = u.order();
    std::vector<Complex> psi(n);
    for (int r = 0; r < n; ++r) psi[r] = e.eigenvectors.at(r, 0);
    auto expectation = [&](const HermitianMatrix& m) {
      Complex s = 0.0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s += std::conj(psi[r]) * m.at(r, c) * psi[c];
      return s.real();
    };
    pts[i] = Vec2{expectation(u), expectation(v)};
  });

  // candidate normals: local minima of the gap, plus support-point jumps
  std::vector<std::pair<double, double>> brackets;
  const double loose_gap = 0.2 * std::max(1e-30, scale);
  double median_jump;
  {
    std::vector<double> jumps(K);
    for (int i = 0; i < K; ++i) jumps[i] = dist(pts[i], pts[(i + 1) % K]);
    std::vector<double> sorted = jumps;
    std::nth_element(sorted.begin(), sorted.begin() + K / 2, sorted.end());
    median_jump = sorted[K / 2];
    for (int i = 0; i < K; ++i) {
      const double prev = gaps[(i + K - 1) % K], next = gaps[(i + 1) % K];
      const bool gap_candidate = gaps[i] <= prev && gaps[i] <= next && gaps[i] < loose_gap;
      const bool jump_candidate = jumps[i] > std::max(10.0 * median_jump, 2.0 * kTol.flat_tol);
      if (gap_candidate)
        brackets.emplace_back(step * (i - 1), step * (i + 1));
      else if (jump_candidate)
        brackets.emplace_back(step * (i - 1), step * (i + 2));
    }
  }

  std::vector<FlatSegment> flats;
  for (const auto& [lo, hi] : brackets) {
    const double theta = refine_gap_minimum(u, v, lo, hi);
    FlatSegment seg;
    if (!flat_at(u, v, theta, scale, &seg)) continue;
    bool dup = false;
    for (const auto& f : flats) {
      const double dtheta = std::abs(std::remainder(f.normal - seg.normal, 2.0 * M_PI));
      if (dtheta < 1e-4 && dist(f.a, seg.a) < 1e-5 && dist(f.b, seg.b) < 1e-5) {
        dup = true;
        break;
      }
    }
    if (!dup) flats.push_back(seg);
  }
  std::sort(flats.begin(), flats.end(),
            [](const FlatSegment& a, const FlatSegment& b) { return a.normal < b.normal; });
  return flats;
}

// corners as maximal theta-intervals whose support points coincide
std::vector<Corner> detect_corners(const std::vector<Vec2>& pts, double step,
                                   double corner_tol) {
  const int K = static_cast<int>(pts.size());
  std::vector<Corner> corners;
  std::vector<bool> used(K, false);
  for (int i = 0; i < K; ++i) {
    if (used[i]) continue;
    // grow the interval of samples coinciding with pts[i]
    int len = 1;
    while (len < K && dist(pts[(i + len) % K], pts[i]) < kTol.point_tol) ++len;
    if (len >= K) break;  // single point (degenerate body)
    // only start at the true beginning of the run
    if (dist(pts[(i + K - 1) % K], pts[i]) < kTol.point_tol) continue;
    const double span = step * (len - 1);
    if (span > corner_tol) {
      Corner c;
      c.point = pts[i];
      c.theta_begin = step * i;
      c.theta_end = step * (i + len - 1);
      corners.push_back(c);
      for (int k = 0; k < len; ++k) used[(i + k) % K] = true;
    }
  }
  return corners;
}

bool has_flat_near(const std::vector<FlatSegment>& flats, double theta, double window) {
  for (const auto& f : flats)
    if (std::abs(std::remainder(f.normal - theta, 2.0 * M_PI)) < window) return true;
  return false;
}

BoundaryFeatures features_support_traced(const Boundary2D& b, const HermitianMatrix& u,
                                         const HermitianMatrix& v) {
  const int K = static_cast<int>(b.samples.size());
  const double step = 2.0 * M_PI / K;
  BoundaryFeatures out;
  out.flats = detect_flats_support(u, v, K);

  std::vector<Vec2> pts(K);
  for (int i = 0; i < K; ++i) pts[i] = b.samples[i].point;
  out.corners = detect_corners(pts, step, 2.0 * step);
  for (auto& c : out.corners)
    c.polyhedral = has_flat_near(out.flats, c.theta_begin - step, 2.0 * step) &&
                   has_flat_near(out.flats, c.theta_end + step, 2.0 * step);

  // non-exposed points: flat endpoints never equal to a sampled support point
  for (const auto& f : out.flats)
    for (const Vec2& e : {f.a, f.b}) {
      bool exposed = false;
      for (const auto& p : pts)
        if (dist(p, e) < kTol.point_tol) {
          exposed = true;
          break;
        }
      if (!exposed) out.nonexposed.push_back(e);
    }
  return out;
}

// ---- ray-traced boundaries (cross-sections) ----

// Maximal straight runs of the sampled polygon, as circular index pairs
// (start, end). A vertex is straight when it lies on the chord of its
// neighbours; a run extends one vertex beyond each straight block.
std::vector<std::pair<int, int>> collinear_runs(const std::vector<Vec2>& pts) {
  const int K = static_cast<int>(pts.size());
  std::vector<bool> straight(K, false);
  int straight_count = 0;
  for (int i = 0; i < K; ++i) {
    const Vec2& a = pts[(i + K - 1) % K];
    const Vec2& c = pts[(i + 1) % K];
    const double chord = dist(a, c);
    if (chord < 1e-15) continue;
    if (point_segment_dist(pts[i], a, c) <= std::max(1e-9, 1e-7 * chord)) {
      straight[i] = true;
      ++straight_count;
    }
  }
  std::vector<std::pair<int, int>> runs;
  if (straight_count == K) return runs;  // degenerate: no usable corner anchor
  for (int i = 0; i < K; ++i) {
    if (!straight[i] || straight[(i + K - 1) % K]) continue;  // block start only
    int len = 1;
    while (len < K && straight[(i + len) % K]) ++len;
    runs.emplace_back((i + K - 1) % K, i + len);  // may wrap; end is i+len mod K
  }
  return runs;
}

BoundaryFeatures features_ray_traced(const Boundary2D& b) {
  const int K = static_cast<int>(b.samples.size());
  const double step = 2.0 * M_PI / K;
  BoundaryFeatures out;

  std::vector<Vec2> pts(K);
  for (int i = 0; i < K; ++i) pts[i] = b.samples[i].point;

  const auto runs = collinear_runs(pts);
  for (const auto& [i, j] : runs) {
    FlatSegment f;
    f.a = pts[i % K];
    f.b = pts[j % K];
    if (f.length() <= kTol.flat_tol) continue;
    // boundary runs counterclockwise, so the outward normal is the edge
    // direction rotated by -pi/2
    f.normal = std::atan2(-(f.b.x - f.a.x), f.b.y - f.a.y);
    if (f.normal < 0) f.normal += 2.0 * M_PI;
    out.flats.push_back(f);
  }

  // support re-parametrization over the sampled polygon
  std::vector<int> winner(K);
  for (int t = 0; t < K; ++t) {
    const double theta = step * t;
    const Vec2 e{std::cos(theta), std::sin(theta)};
    int best = 0;
    double hb = -1e300;
    for (int k = 0; k < K; ++k) {
      const double val = dot(pts[k], e);
      if (val > hb) {
        hb = val;
        best = k;
      }
    }
    winner[t] = best;
  }
  // corner = vertex winning an interval of normals longer than 2 grid steps
  for (int t = 0; t < K; ++t) {
    const int w = winner[t];
    if (winner[(t + K - 1) % K] == w) continue;  // interval start only
    int len = 1;
    while (len < K && winner[(t + len) % K] == w) ++len;
    const double span = step * (len - 1);
    if (span > 2.0 * step) {
      Corner c;
      c.point = pts[w];
      c.theta_begin = step * t;
      c.theta_end = step * (t + len - 1);
      // side straightness over a window on each side of the vertex
      const int window = std::max(6, K / 64);
      auto side_flat = [&](int dir) {
        const Vec2& far = pts[(w + dir * window % K + K) % K];
        const double chord = dist(pts[w], far);
        if (chord < 1e-12) return false;
        double dev = 0.0;
        for (int k = 1; k < window; ++k)
          dev = std::max(dev, point_segment_dist(pts[(w + dir * k % K + K) % K], pts[w], far));
        return dev <= std::max(1e-9, 1e-6 * chord);
      };
      c.polyhedral = side_flat(+1) && side_flat(-1);
      out.corners.push_back(c);
    }
  }

  // Flat-run endpoints that never win a support direction. Exposure is
  // judged at the sampling resolution: the winning vertex must come within a
  // few grid spacings of the endpoint.
  double median_spacing;
  {
    std::vector<double> sp(K);
    for (int k = 0; k < K; ++k) sp[k] = dist(pts[k], pts[(k + 1) % K]);
    std::nth_element(sp.begin(), sp.begin() + K / 2, sp.end());
    median_spacing = sp[K / 2];
  }
  const double expose_tol = std::max(kTol.point_tol, 4.0 * median_spacing);
  for (const auto& f : out.flats)
    for (const Vec2& e : {f.a, f.b}) {
      bool exposed = false;
      for (int s = 0; s < K && !exposed; ++s)
        if (dist(pts[winner[s]], e) < expose_tol) exposed = true;
      if (!exposed) out.nonexposed.push_back(e);
    }
  return out;
}

}  // namespace

BoundaryFeatures boundary_features(const Boundary2D& b, const HermitianMatrix& u,
                                   const HermitianMatrix& v) {
  if (b.samples.size() < 8) throw std::invalid_argument("boundary_features: too few samples");
  if (b.kind == BoundaryKind::SupportTraced) return features_support_traced(b, u, v);
  return features_ray_traced(b);
}

ShapeReport classify_shape_n3(const ComplexMatrix& a, int K) {
  if (a.order() != 3) throw std::invalid_argument("classify_shape_n3: order must be 3");
  const SplitParts parts = split_matrix(a);
  ShapeReport rep;
  rep.flats = detect_flats_support(parts.u, parts.v, K);
  for (auto& f : rep.flats) {
    f.a.x += parts.shift.real();
    f.a.y += parts.shift.imag();
    f.b.x += parts.shift.real();
    f.b.y += parts.shift.imag();
  }
  const ComplexMatrix comm = a * a.adjoint() - a.adjoint() * a;
  rep.normal_matrix = comm.frobenius_norm() < 1e-10;
  switch (rep.flats.size()) {
    case 0: rep.shape = ShapeClass::NoFlat; break;
    case 1: rep.shape = ShapeClass::OneFlat; break;
    case 2: rep.shape = ShapeClass::TwoFlats; break;
    case 3: rep.shape = ShapeClass::Triangle; break;
    default:
      throw std::runtime_error("classify_shape_n3: more than three flats detected");
  }
  return rep;
}

}  // namespace qgeom
