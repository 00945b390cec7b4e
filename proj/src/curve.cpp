#include "qgeom/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qgeom/rng.hpp"

namespace qgeom {

CurvePoint curve_point(double t) {
  CurvePoint p;
  p.t = t;
  p.x = {std::cos(t) * std::cos(3.0 * t), std::cos(t) * std::sin(3.0 * t), -std::sin(t)};
  return p;
}

namespace {

// homogeneous binary form of degree `deg`, coefficient c[k] on y0^(deg-k) y1^k
struct BForm {
  int deg = 0;
  std::vector<double> c;
};

BForm bform(int deg, std::initializer_list<double> coeffs) {
  BForm f;
  f.deg = deg;
  f.c.assign(coeffs);
  return f;
}

BForm mul(const BForm& a, const BForm& b) {
  BForm r;
  r.deg = a.deg + b.deg;
  r.c.assign(static_cast<size_t>(r.deg) + 1, 0.0);
  for (int i = 0; i <= a.deg; ++i)
    for (int j = 0; j <= b.deg; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

BForm sub(const BForm& a, const BForm& b) {
  BForm r = a;
  for (int i = 0; i <= b.deg; ++i) r.c[i] -= b.c[i];
  return r;
}

BForm scale(double s, const BForm& a) {
  BForm r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

void rref4x9(const double in[4][9], double out[4][9]) {
  double m[4][9];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 9; ++j) m[i][j] = in[i][j];
  int row = 0;
  for (int col = 0; col < 9 && row < 4; ++col) {
    int pivot = -1;
    double best = 1e-12;
    for (int r = row; r < 4; ++r)
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        pivot = r;
      }
    if (pivot < 0) continue;
    std::swap_ranges(m[row], m[row] + 9, m[pivot]);
    const double p = m[row][col];
    for (int j = 0; j < 9; ++j) m[row][j] /= p;
    for (int r = 0; r < 4; ++r) {
      if (r == row) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 9; ++j) m[r][j] -= f * m[row][j];
    }
    ++row;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 9; ++j) out[i][j] = m[i][j];
}

AppendixConstants derive_constants() {
  // parametrization cos t = (y0^2 - y1^2)/(y0^2 + y1^2),
  //                 sin t = 2 y0 y1 / (y0^2 + y1^2)
  const BForm p = bform(2, {1.0, 0.0, 1.0});    // y0^2 + y1^2
  const BForm mdiff = bform(2, {1.0, 0.0, -1.0});  // y0^2 - y1^2
  const BForm s2 = bform(2, {0.0, 2.0, 0.0});   // 2 y0 y1

  const BForm p2 = mul(p, p);
  const BForm row0 = mul(p2, p2);  // (y0^2 + y1^2)^4
  const BForm m2 = mul(mdiff, mdiff);
  const BForm ss = mul(s2, s2);
  // cos(t) cos(3t) * denom = (y0^2-y1^2)^2 [ (y0^2-y1^2)^2 - 3 (2 y0 y1)^2 ]
  const BForm row1 = mul(m2, sub(m2, scale(3.0, ss)));
  // cos(t) sin(3t) * denom = (y0^2-y1^2)(2 y0 y1) [ 3 (y0^2-y1^2)^2 - (2 y0 y1)^2 ]
  const BForm row2 = mul(mul(mdiff, s2), sub(scale(3.0, m2), ss));
  // -sin(t) * denom = -(2 y0 y1)(y0^2+y1^2)^3
  const BForm row3 = scale(-1.0, mul(s2, mul(p, p2)));

  AppendixConstants k;
  const BForm* rows[4] = {&row0, &row1, &row2, &row3};
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 9; ++j) k.A[r][j] = rows[r]->c[j];
  rref4x9(k.A, k.A_rref);
  return k;
}

void check_constants(const AppendixConstants& k) {
  auto expect = [](bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("curve constants: ") + what);
  };
  // rows of A known in closed form
  const double expected_A[4][9] = {
      {1, 0, 4, 0, 6, 0, 4, 0, 1},
      {1, 0, -16, 0, 30, 0, -16, 0, 1},
      {0, 6, 0, -26, 0, 26, 0, -6, 0},
      {0, -2, 0, -6, 0, -6, 0, -2, 0},
  };
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 9; ++j)
      expect(std::abs(k.A[r][j] - expected_A[r][j]) < 1e-12, "matrix A mismatch");

  const double expected_rref[4][9] = {
      {1, 0, 0, 0, 54.0 / 5, 0, 0, 0, 1},
      {0, 1, 0, 0, 0, 39.0 / 11, 0, 2.0 / 11, 0},
      {0, 0, 1, 0, -6.0 / 5, 0, 1, 0, 0},
      {0, 0, 0, 1, 0, -2.0 / 11, 0, 3.0 / 11, 0},
  };
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 9; ++j)
      expect(std::abs(k.A_rref[r][j] - expected_rref[r][j]) < 1e-12, "RREF mismatch");

  // defining identity A xi(y) = (y0^2+y1^2)^4 (1, x(t))^T on a few points
  Rng rng(7);
  for (int it = 0; it < 32; ++it) {
    const double y0 = rng.uniform(-1.0, 1.0);
    const double y1 = rng.uniform(-1.0, 1.0);
    const double q = y0 * y0 + y1 * y1;
    if (q < 0.05) continue;
    double xi[9];
    for (int j = 0; j < 9; ++j) xi[j] = std::pow(y0, 8 - j) * std::pow(y1, j);
    const double t = std::atan2(2.0 * y0 * y1 / q, (y0 * y0 - y1 * y1) / q);
    const auto x = curve_point(t).x;
    const double denom = q * q * q * q;
    const double target[4] = {denom, denom * x[0], denom * x[1], denom * x[2]};
    for (int r = 0; r < 4; ++r) {
      double acc = 0.0;
      for (int j = 0; j < 9; ++j) acc += k.A[r][j] * xi[j];
      expect(std::abs(acc - target[r]) < 1e-10 * std::max(1.0, denom),
             "defining polynomial identity violated");
    }
  }
  // particular solution solves A u = (1, v)^T
  Rng rng2(8);
  for (int it = 0; it < 16; ++it) {
    const std::array<double, 3> v = {rng2.uniform(-1, 1), rng2.uniform(-1, 1),
                                     rng2.uniform(-1, 1)};
    const auto ut = k.particular(v);
    double u[9] = {ut[0], ut[1], ut[2], ut[3], 0, 0, 0, 0, 0};
    const double target[4] = {1.0, v[0], v[1], v[2]};
    for (int r = 0; r < 4; ++r) {
      double acc = 0.0;
      for (int j = 0; j < 9; ++j) acc += k.A[r][j] * u[j];
      expect(std::abs(acc - target[r]) < 1e-12, "particular solution violated");
    }
  }
}

}  // namespace

std::array<double, 4> AppendixConstants::particular(const std::array<double, 3>& v) const {
  return {(4.0 + v[0]) / 5.0, (3.0 * v[1] - 13.0 * v[2]) / 44.0, (1.0 - v[0]) / 20.0,
          (-v[1] - 3.0 * v[2]) / 44.0};
}

std::array<double, 4> AppendixConstants::head(const std::array<double, 3>& v,
                                              const std::array<double, 5>& uf) const {
  const auto ut = particular(v);
  // u_k = utilde_k - sum_j rref[k][4 + j] * u_free_j
  std::array<double, 4> u;
  for (int r = 0; r < 4; ++r) {
    double acc = ut[r];
    for (int j = 0; j < 5; ++j) acc -= A_rref[r][4 + j] * uf[j];
    u[r] = acc;
  }
  return u;
}

const AppendixConstants& build_constants() {
  static const AppendixConstants k = [] {
    AppendixConstants c = derive_constants();
    check_constants(c);
    return c;
  }();
  return k;
}

Sym6 extended_matrix(const std::array<double, 3>& v, const std::array<double, 5>& uf) {
  const AppendixConstants& k = build_constants();
  const auto head = k.head(v, uf);
  double u[9] = {head[0], head[1], head[2], head[3], uf[0], uf[1], uf[2], uf[3], uf[4]};
  Sym6 m{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m[static_cast<size_t>(i) * 6 + j] = u[i + j];
  m[35] = 172.0 / 20.0 * uf[0] + 3.0 / 20.0 * (1.0 - v[0]);
  return m;
}

namespace {

// Jacobi eigensolver for 6x6 real symmetric matrices; returns eigenvalues
// ascending in ev and eigenvectors as columns of vec.
void sym6_eig(const Sym6& in, std::array<double, 6>& ev, std::array<double, 36>& vec) {
  std::array<double, 36> a = in;
  vec.fill(0.0);
  for (int i = 0; i < 6; ++i) vec[static_cast<size_t>(i) * 6 + i] = 1.0;
  auto at = [](std::array<double, 36>& m, int i, int j) -> double& {
    return m[static_cast<size_t>(i) * 6 + j];
  };
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double thresh = std::max(1e-300, 1e-15 * scale);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 5; ++p)
      for (int q = p + 1; q < 6; ++q) off += at(a, p, q) * at(a, p, q);
    if (std::sqrt(2.0 * off) <= thresh) break;
    for (int p = 0; p < 5; ++p)
      for (int q = p + 1; q < 6; ++q) {
        const double apq = at(a, p, q);
        if (std::abs(apq) <= thresh * 1e-2) continue;
        const double tau = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 6; ++k) {
          const double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 6; ++k) {
          const double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < 6; ++k) {
          const double vkp = at(vec, k, p), vkq = at(vec, k, q);
          at(vec, k, p) = c * vkp - s * vkq;
          at(vec, k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::array<int, 6> idx = {0, 1, 2, 3, 4, 5};
  std::array<double, 6> diag;
  for (int i = 0; i < 6; ++i) diag[i] = a[static_cast<size_t>(i) * 6 + i];
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return diag[i] < diag[j]; });
  std::array<double, 36> sorted;
  for (int k = 0; k < 6; ++k) {
    ev[k] = diag[idx[k]];
    for (int i = 0; i < 6; ++i)
      sorted[static_cast<size_t>(i) * 6 + k] = vec[static_cast<size_t>(i) * 6 + idx[k]];
  }
  vec = sorted;
}

double lambda_min_of(const std::array<double, 3>& v, const std::array<double, 5>& uf) {
  const Sym6 m = extended_matrix(v, uf);
  std::array<double, 6> ev;
  std::array<double, 36> vec;
  sym6_eig(m, ev, vec);
  return ev[0];
}

// ---- log-det barrier machinery for the 6-variable maximization ----

// Cholesky of a symmetric positive definite 6x6; returns false if not PD.
bool chol6(const Sym6& a, Sym6& l) {
  l.fill(0.0);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a[static_cast<size_t>(i) * 6 + j];
      for (int k = 0; k < j; ++k)
        sum -= l[static_cast<size_t>(i) * 6 + k] * l[static_cast<size_t>(j) * 6 + k];
      if (i == j) {
        if (sum <= 0.0) return false;
        l[static_cast<size_t>(i) * 6 + i] = std::sqrt(sum);
      } else {
        l[static_cast<size_t>(i) * 6 + j] = sum / l[static_cast<size_t>(j) * 6 + j];
      }
    }
  }
  return true;
}

double chol6_logdet(const Sym6& l) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += std::log(l[static_cast<size_t>(i) * 6 + i]);
  return 2.0 * s;
}

// inverse from the Cholesky factor
Sym6 chol6_inverse(const Sym6& l) {
  Sym6 inv{};
  for (int col = 0; col < 6; ++col) {
    double y[6];
    for (int i = 0; i < 6; ++i) {
      double sum = (i == col) ? 1.0 : 0.0;
      for (int k = 0; k < i; ++k) sum -= l[static_cast<size_t>(i) * 6 + k] * y[k];
      y[i] = sum / l[static_cast<size_t>(i) * 6 + i];
    }
    for (int i = 5; i >= 0; --i) {
      double sum = y[i];
      for (int k = i + 1; k < 6; ++k) sum -= l[static_cast<size_t>(k) * 6 + i] * inv[static_cast<size_t>(k) * 6 + col];
      inv[static_cast<size_t>(i) * 6 + col] = sum / l[static_cast<size_t>(i) * 6 + i];
    }
  }
  return inv;
}

Sym6 sym6_mul(const Sym6& a, const Sym6& b) {
  Sym6 c{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      const double aik = a[static_cast<size_t>(i) * 6 + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < 6; ++j)
        c[static_cast<size_t>(i) * 6 + j] += aik * b[static_cast<size_t>(k) * 6 + j];
    }
  return c;
}

double sym6_dot(const Sym6& a, const Sym6& b) {
  double s = 0.0;
  for (int i = 0; i < 36; ++i) s += a[i] * b[i];
  return s;
}

// direction matrices dM/du_k, independent of (v, u)
const std::array<Sym6, 5>& moment_directions() {
  static const std::array<Sym6, 5> dirs = [] {
    std::array<Sym6, 5> d;
    const std::array<double, 3> v0{};
    const Sym6 base = extended_matrix(v0, {0, 0, 0, 0, 0});
    for (int k = 0; k < 5; ++k) {
      std::array<double, 5> e{};
      e[k] = 1.0;
      const Sym6 m = extended_matrix(v0, e);
      for (int i = 0; i < 36; ++i) d[k][i] = m[i] - base[i];
    }
    return d;
  }();
  return dirs;
}

// One barrier run: maximize t + mu log det(M(u) - t I) along a decreasing mu
// schedule with damped Newton steps in (u, t). Returns the achieved minimum
// eigenvalue and the maximizing u.
bool barrier_maximize(const std::array<double, 3>& v, std::array<double, 5>& u_io,
                      double& lambda_out) {
  const auto& dirs = moment_directions();
  std::array<double, 5> u = u_io;
  double t = lambda_min_of(v, u) - 1.0;

  auto assemble_s = [&](const std::array<double, 5>& uu, double tt) {
    Sym6 s = extended_matrix(v, uu);
    for (int i = 0; i < 6; ++i) s[static_cast<size_t>(i) * 6 + i] -= tt;
    return s;
  };

  for (double mu = 0.25; mu > 1e-12; mu /= 8.0) {
    for (int iter = 0; iter < 80; ++iter) {
      const Sym6 s = assemble_s(u, t);
      Sym6 l;
      if (!chol6(s, l)) return false;
      const Sym6 sinv = chol6_inverse(l);
      // products S^-1 D_a for the five moment directions and D_t = -I
      std::array<Sym6, 6> x;
      for (int k = 0; k < 5; ++k) x[k] = sym6_mul(sinv, dirs[k]);
      for (int i = 0; i < 36; ++i) x[5][i] = -sinv[i];

      double g[6];
      for (int k = 0; k < 5; ++k) {
        double tr = 0.0;
        for (int i = 0; i < 6; ++i) tr += x[k][static_cast<size_t>(i) * 6 + i];
        g[k] = mu * tr;
      }
      {
        double tr = 0.0;
        for (int i = 0; i < 6; ++i) tr += sinv[static_cast<size_t>(i) * 6 + i];
        g[5] = 1.0 - mu * tr;
      }
      // negated Hessian: nh[a][b] = mu Tr(X_a X_b), positive definite
      double nh[6][6];
      for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b) {
          double tr = 0.0;
          for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
              tr += x[a][static_cast<size_t>(i) * 6 + j] * x[b][static_cast<size_t>(j) * 6 + i];
          nh[a][b] = nh[b][a] = mu * tr;
        }
      // solve nh * d = g by Gaussian elimination with partial pivoting
      double d[6];
      {
        double m[6][7];
        for (int i = 0; i < 6; ++i) {
          for (int j = 0; j < 6; ++j) m[i][j] = nh[i][j];
          m[i][6] = g[i];
        }
        for (int col = 0; col < 6; ++col) {
          int piv = col;
          for (int r = col + 1; r < 6; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
          if (std::abs(m[piv][col]) < 1e-300) return false;
          if (piv != col)
            for (int j = col; j < 7; ++j) std::swap(m[piv][j], m[col][j]);
          for (int r = col + 1; r < 6; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int j = col; j < 7; ++j) m[r][j] -= f * m[col][j];
          }
        }
        for (int i = 5; i >= 0; --i) {
          double sum = m[i][6];
          for (int j = i + 1; j < 6; ++j) sum -= m[i][j] * d[j];
          d[i] = sum / m[i][i];
        }
      }
      double decrement2 = 0.0;
      for (int i = 0; i < 6; ++i) decrement2 += g[i] * d[i];
      if (!(decrement2 >= 0.0)) return false;

      // damped step, backtracking on feasibility and objective
      const double f0 = t + mu * chol6_logdet(l);
      double alpha = (decrement2 > 1.0) ? 1.0 / (1.0 + std::sqrt(decrement2)) : 1.0;
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        std::array<double, 5> ut;
        for (int k = 0; k < 5; ++k) ut[k] = u[k] + alpha * d[k];
        const double tt = t + alpha * d[5];
        Sym6 lt;
        const Sym6 st = assemble_s(ut, tt);
        if (chol6(st, lt)) {
          const double ft = tt + mu * chol6_logdet(lt);
          if (ft > f0 + 1e-16 * std::abs(f0)) {
            u = ut;
            t = tt;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!moved) break;
      if (decrement2 < 1e-18) break;
    }
  }
  u_io = u;
  lambda_out = lambda_min_of(v, u);
  return true;
}

}  // namespace

double sym6_min_eigenvalue(const Sym6& m) {
  std::array<double, 6> ev;
  std::array<double, 36> vec;
  sym6_eig(m, ev, vec);
  return ev[0];
}

MomentCertificate membership_C(const std::array<double, 3>& v, const MembershipOptions& opts) {
  build_constants();
  // circle-average moments make a well-conditioned interior start
  const std::array<double, 5> uniform_moments = {3.0 / 128.0, 0.0, 5.0 / 128.0, 0.0,
                                                 35.0 / 128.0};
  double best_val = -1e300;
  std::array<double, 5> best_u{};
  bool solved = false;
  const int attempts = std::max(1, opts.restarts);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::array<double, 5> u = uniform_moments;
    if (attempt > 0) {
      Rng rng(Rng::stream_seed(opts.seed, attempt));
      for (auto& x : u) x += rng.uniform(-0.05, 0.05);
    }
    double val = 0.0;
    if (barrier_maximize(v, u, val)) {
      if (val > best_val) {
        best_val = val;
        best_u = u;
      }
      solved = true;
      break;  // the problem is concave; one converged run is the optimum
    }
  }
  if (!solved) throw std::runtime_error("membership_C: barrier solver failed to converge");

  MomentCertificate cert;
  cert.v = v;
  cert.u_free = best_u;
  cert.lambda_star = best_val;
  if (best_val > opts.band)
    cert.status = MomentCertificate::Status::Inside;
  else if (best_val < -opts.band)
    cert.status = MomentCertificate::Status::Outside;
  else
    cert.status = MomentCertificate::Status::Boundary;
  return cert;
}

CurveHullOracle::CurveHullOracle(int directions, int curve_samples) {
  if (directions < 100 || curve_samples < 1000)
    throw std::invalid_argument("CurveHullOracle: need >= 100 directions, >= 1000 samples");
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  dirs_.resize(directions);
  for (int i = 0; i < directions; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / directions;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    dirs_[i] = {r * std::cos(a), r * std::sin(a), z};
  }
  std::vector<std::array<double, 3>> pts(curve_samples);
  for (int k = 0; k < curve_samples; ++k)
    pts[k] = curve_point(2.0 * M_PI * k / curve_samples).x;
  support_.resize(directions);
  for (int i = 0; i < directions; ++i) {
    double h = -1e300;
    for (const auto& p : pts)
      h = std::max(h, p[0] * dirs_[i][0] + p[1] * dirs_[i][1] + p[2] * dirs_[i][2]);
    support_[i] = h;
  }
}

bool CurveHullOracle::contains(const std::array<double, 3>& v) const {
  for (size_t i = 0; i < dirs_.size(); ++i) {
    const double proj = v[0] * dirs_[i][0] + v[1] * dirs_[i][1] + v[2] * dirs_[i][2];
    if (proj > support_[i] + 1e-9) return false;
  }
  return true;
}

bool oracle_membership_C(const std::array<double, 3>& v, int directions, int curve_samples) {
  const CurveHullOracle oracle(directions, curve_samples);
  return oracle.contains(v);
}

DensityMatrix lift_to_Q6(const MomentCertificate& cert) {
  if (cert.lambda_star < -1e-10)
    throw std::invalid_argument("lift_to_Q6: certificate is not PSD");
  const Sym6 m = extended_matrix(cert.v, cert.u_free);
  ComplexMatrix c(6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) c.at(i, j) = m[static_cast<size_t>(i) * 6 + j];
  return DensityMatrix::from(HermitianMatrix::from(c, 1e-12), 1e-8, 1e-12);
}

std::array<double, 3> recover_v(const Sym6& m) {
  auto at = [&](int i, int j) { return m[static_cast<size_t>(i) * 6 + j]; };
  double u[9];
  for (int j = 0; j < 5; ++j) u[j] = at(0, j);
  u[5] = at(1, 4);
  u[6] = at(2, 4);
  u[7] = at(3, 4);
  u[8] = at(4, 4);
  const AppendixConstants& k = build_constants();
  std::array<double, 3> v;
  for (int r = 0; r < 3; ++r) {
    double acc = 0.0;
    for (int j = 0; j < 9; ++j) acc += k.A[r + 1][j] * u[j];
    v[r] = acc;
  }
  return v;
}

}  // namespace qgeom
