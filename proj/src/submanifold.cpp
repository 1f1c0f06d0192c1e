#include "solvgeo/submanifold.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace solvgeo {

namespace {

Vector frame_direction(const JMap& j, const Vector& x_dir) {
  return inverse(gram_schmidt_frame(j.gram_v)) * x_dir;
}

// Four successive single-index transforms: out_abcd = sum T_ia T_jb T_kc T_ld in_ijkl.
std::vector<double> restrict_tensor(const std::vector<double>& in, std::size_t n, const Matrix& t) {
  const std::size_t d = t.cols();
  std::vector<double> a(d * n * n * n, 0.0);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t i = 0; i < n; ++i) {
      const double w = t(i, p);
      if (w == 0.0) continue;
      const double* src = &in[i * n * n * n];
      double* dst = &a[p * n * n * n];
      for (std::size_t r = 0; r < n * n * n; ++r) dst[r] += w * src[r];
    }
  std::vector<double> b(d * d * n * n, 0.0);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q)
      for (std::size_t j = 0; j < n; ++j) {
        const double w = t(j, q);
        if (w == 0.0) continue;
        const double* src = &a[(p * n + j) * n * n];
        double* dst = &b[(p * d + q) * n * n];
        for (std::size_t r = 0; r < n * n; ++r) dst[r] += w * src[r];
      }
  std::vector<double> c(d * d * d * n, 0.0);
  for (std::size_t pq = 0; pq < d * d; ++pq)
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t k = 0; k < n; ++k) {
        const double w = t(k, s);
        if (w == 0.0) continue;
        const double* src = &b[(pq * n + k) * n];
        double* dst = &c[(pq * d + s) * n];
        for (std::size_t r = 0; r < n; ++r) dst[r] += w * src[r];
      }
  std::vector<double> out(d * d * d * d, 0.0);
  for (std::size_t pqs = 0; pqs < d * d * d; ++pqs)
    for (std::size_t u = 0; u < d; ++u) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += t(l, u) * c[pqs * n + l];
      out[pqs * d + u] = s;
    }
  return out;
}

}  // namespace

void require_valid_point(const JMap& j, const SubmanifoldPoint& p) {
  if (!(p.t > 0.0) || !std::isfinite(p.t)) throw ValidationError("submanifold point: t must be positive");
  if (!(p.r > 0.0) || !std::isfinite(p.r)) throw ValidationError("submanifold point: r must be positive");
  if (p.x_dir.size() != j.m) throw ValidationError("submanifold point: x_dir must lie in v");
  const double nx = std::sqrt(bilinear(j.gram_v, p.x_dir, p.x_dir));
  if (std::abs(nx - 1.0) > 1e-9) throw ValidationError("submanifold point: x_dir must be a unit vector");
}

Vector unit_normal(const JMap& j, const SubmanifoldPoint& p) {
  require_valid_point(j, p);
  const Vector x = frame_direction(j, p.x_dir);
  Vector n(j.m + j.k + 1);
  for (std::size_t i = 0; i < j.m; ++i) n[i] = x[i];
  return n;
}

Matrix tangent_frame(const JMap& j, const SubmanifoldPoint& p) {
  require_valid_point(j, p);
  const std::size_t m = j.m, k = j.k, n = m + k + 1;
  const Vector x = frame_direction(j, p.x_dir);
  Matrix seed(m, m + 1);
  seed.set_col(0, x);
  for (std::size_t i = 0; i < m; ++i) seed.set_col(i + 1, Vector::unit(m, i));
  const Matrix span = orthonormal_span(seed);
  Matrix out(n, n - 1);
  for (std::size_t a = 0; a + 1 < m; ++a)
    for (std::size_t i = 0; i < m; ++i) out(i, a) = span(i, a + 1);
  for (std::size_t l = 0; l < k; ++l) out(m + l, m - 1 + l) = 1.0;
  out(n - 1, n - 2) = 1.0;
  return out;
}

WeingartenData weingarten(const JMap& j, const SubmanifoldPoint& p) {
  require_valid(j);
  const std::size_t m = j.m, k = j.k, n = m + k + 1;
  const JMap o = orthonormalize(j).j;
  const Matrix frame = tangent_frame(j, p);
  const Vector x = frame_direction(j, p.x_dir);
  const double s = std::sqrt(p.t) / p.r;
  std::vector<Vector> jx;
  for (const Matrix& a : o.J) jx.push_back(a * x);

  const std::size_t d = frame.cols();
  std::vector<Vector> images;
  for (std::size_t a = 0; a < d; ++a) {
    Vector img(n);
    for (std::size_t i = 0; i < m; ++i) img[i] = s * frame(i, a);
    // [Y, x] has z coordinates <J_l Y, x> = -<Y, J_l x>.
    for (std::size_t l = 0; l < k; ++l) {
      double yx = 0.0;
      for (std::size_t i = 0; i < m; ++i) yx -= frame(i, a) * jx[l][i];
      img[m + l] = 0.5 * yx;
    }
    for (std::size_t l = 0; l < k; ++l) {
      const double zl = frame(m + l, a);
      if (zl == 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) img[i] -= 0.5 * zl * jx[l][i];
    }
    images.push_back(img);
  }
  WeingartenData w{Matrix(d, d), frame, p};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) w.b(a, b) = dot(images[a], frame.col(b));
  return w;
}

Matrix weingarten_oracle(const JMap& j, double c, const SubmanifoldPoint& p, double h) {
  require_valid(j);
  const std::size_t m = j.m;
  const ConnectionTable gamma = closed_form_connection(j, c);
  const Matrix frame = tangent_frame(j, p);
  const Vector normal = unit_normal(j, p);
  const Matrix pv = gram_schmidt_frame(j.gram_v);
  const Matrix pv_inv = inverse(pv);
  const Vector x = p.r * p.x_dir;

  // Frame coefficients of X/|X| as a function of the coordinate X.
  auto coeffs = [&](const Vector& xx) {
    const double nx = std::sqrt(bilinear(j.gram_v, xx, xx));
    return (1.0 / nx) * (pv_inv * xx);
  };

  const std::size_t d = frame.cols();
  Matrix b(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    const Vector u = frame.col(a);
    Vector nabla = gamma.derivative(u, normal);
    // Only v directions move the X coordinate, with speed sqrt(t).
    Vector uv(m);
    for (std::size_t i = 0; i < m; ++i) uv[i] = u[i];
    if (max_abs(uv) > 0.0) {
      const Vector dir = std::sqrt(p.t) * (pv * uv);
      const Vector deriv = (1.0 / (12.0 * h)) * (coeffs(x - 2.0 * h * dir) - 8.0 * coeffs(x - h * dir) +
                                                 8.0 * coeffs(x + h * dir) - coeffs(x + 2.0 * h * dir));
      for (std::size_t i = 0; i < m; ++i) nabla[i] += deriv[i];
    }
    for (std::size_t col = 0; col < d; ++col) b(a, col) = dot(nabla, frame.col(col));
  }
  return b;
}

SubmanifoldGeometry::SubmanifoldGeometry(const JMap& j, double c)
    : j_(j), c_(c), curv_(curvature(build_g(j, c))) {}

std::vector<double> SubmanifoldGeometry::tangent_curvature(const WeingartenData& w) const {
  const std::size_t d = w.b.rows();
  std::vector<double> r = restrict_tensor(curv_.riemann_tensor(), curv_.dim(), w.frame);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e)
          r[((a * d + b) * d + c) * d + e] += w.b(a, e) * w.b(b, c) - w.b(a, c) * w.b(b, e);
  return r;
}

double SubmanifoldGeometry::sectional(const SubmanifoldPoint& p, const Vector& u, const Vector& v) const {
  const Vector normal = unit_normal(j_, p);
  const double scale = std::max(norm(u), norm(v));
  if (std::abs(dot(u, normal)) > 1e-10 * scale || std::abs(dot(v, normal)) > 1e-10 * scale)
    throw ValidationError("sub_sectional: vectors must be tangent to the submanifold");
  const WeingartenData w = weingarten(j_, p);
  const Matrix bfull = w.frame * w.b * w.frame.transpose();
  const Vector bu = bfull * u, bv = bfull * v;
  const double uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
  const double area = uu * vv - uv * uv;
  if (!(area > 1e-14 * uu * vv)) throw ValidationError("sub_sectional: vectors do not span a 2-plane");
  const double gauss = dot(bu, u) * dot(bv, v) - dot(bu, v) * dot(bu, v);
  return (curv_.riemann(u, v, v, u) + gauss) / area;
}

SubmanifoldGeometry::ScalarParts SubmanifoldGeometry::scalar(const SubmanifoldPoint& p) const {
  const WeingartenData w = weingarten(j_, p);
  const Vector normal = unit_normal(j_, p);
  ScalarParts s;
  s.ambient_scalar = curv_.scalar();
  s.ricci_nn = bilinear(curv_.ricci(), normal, normal);
  const double tr = w.b.trace();
  s.trace_term = tr * tr - (w.b * w.b).trace();
  s.value = s.ambient_scalar - 2.0 * s.ricci_nn + s.trace_term;
  return s;
}

double sub_sectional(const JMap& j, double c, const SubmanifoldPoint& p, const Vector& u, const Vector& v) {
  return SubmanifoldGeometry(j, c).sectional(p, u, v);
}

SubmanifoldGeometry::ScalarParts sub_scalar(const JMap& j, double c, const SubmanifoldPoint& p) {
  return SubmanifoldGeometry(j, c).scalar(p);
}

std::vector<ProfileRow> scalar_profile(const JMap& j, double c, double r, const std::vector<double>& t_grid,
                                       std::size_t samples, std::uint64_t seed) {
  require_valid(j);
  if (j.k == 0) throw ValidationError("scalar_profile: needs dim z >= 1");
  if (t_grid.empty()) throw ValidationError("scalar_profile: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw ValidationError("scalar_profile: t values must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw ValidationError("scalar_profile: t grid must be increasing");
  }
  if (samples == 0) throw ValidationError("scalar_profile: need at least one sample");
  const SubmanifoldGeometry geo(j, c);
  const Matrix pv = gram_schmidt_frame(j.gram_v);
  std::mt19937_64 rng(seed);
  std::vector<Vector> dirs;
  for (std::size_t s = 0; s < samples; ++s) dirs.push_back(pv * normalized(random_gaussian(j.m, rng)));

  std::vector<ProfileRow> rows;
  for (double t : t_grid) {
    ProfileRow row{t, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
    for (const Vector& x : dirs) {
      const double v = geo.scalar({t, x, r}).value;
      row.rho_min = std::min(row.rho_min, v);
      row.rho_max = std::max(row.rho_max, v);
      row.rho_mean += v;
    }
    row.rho_mean /= static_cast<double>(dirs.size());
    rows.push_back(row);
  }
  return rows;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
  const auto old = os.precision(17);
  os << "t,rho_min,rho_max,rho_mean\n";
  for (const ProfileRow& r : rows) os << r.t << ',' << r.rho_min << ',' << r.rho_max << ',' << r.rho_mean << '\n';
  os.precision(old);
}

}  // namespace solvgeo
