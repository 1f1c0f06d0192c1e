#include "solvgeo/homogeneous.hpp"

#include <cmath>
#include <stdexcept>

namespace solvgeo {

EinsteinReport einstein_check(const JMap& j, double tol) {
  require_valid(j);
  const JMap o = orthonormalize(j).j;
  const double m = static_cast<double>(o.m);
  EinsteinReport rep;
  for (std::size_t i = 0; i < o.k; ++i)
    for (std::size_t l = 0; l < o.k; ++l) {
      const double val = (i == l ? 1.0 : 0.0) + (o.J[i] * o.J[l]).trace() / m;
      rep.condition_i_residual = std::max(rep.condition_i_residual, std::abs(val));
    }
  Matrix casimir(o.m, o.m);
  for (const Matrix& a : o.J) casimir += a * a;
  rep.casimir_scalar = casimir.trace() / m;
  rep.condition_ii_residual = (casimir - rep.casimir_scalar * Matrix::identity(o.m)).frobenius();
  rep.condition_i = rep.condition_i_residual <= tol;
  rep.condition_ii = rep.condition_ii_residual <= tol;

  const CurvatureData curv = curvature(build_g(j, 1.0));
  const SymEigen e = sym_eigen(curv.ricci());
  rep.ricci_eigen_spread = e.values[e.values.size() - 1] - e.values[0];
  return rep;
}

ScalarCurvatureN scalar_curvature_N(const JMap& j, double r, const Vector& x) {
  require_valid(j);
  if (!(r > 0.0)) throw std::domain_error("scalar_curvature_N: r must be positive");
  if (x.size() != j.m) throw ValidationError("scalar_curvature_N: x must lie in v");
  const double nx = std::sqrt(bilinear(j.gram_v, x, x));
  if (std::abs(nx - r) > 1e-9 * r) throw std::domain_error("scalar_curvature_N: |x| must equal r");

  const MetricLieAlgebra h = build_h(j);
  const CurvatureData curv = curvature(h);
  const std::size_t m = j.m, n = h.dim();
  ScalarCurvatureN out;
  out.tau = curv.scalar();

  // Unit normal x / r in the orthonormal frame.
  Vector embedded(n);
  for (std::size_t i = 0; i < m; ++i) embedded[i] = x[i];
  const Vector normal = (1.0 / r) * (h.frame_inverse() * embedded);

  // Orthonormal tangent frame: complement of the normal.
  Matrix seed(n, n + 1);
  seed.set_col(0, normal);
  for (std::size_t i = 0; i < n; ++i) seed.set_col(i + 1, Vector::unit(n, i));
  const Matrix span = orthonormal_span(seed);
  const Matrix tangent = span.columns(1, n - 1);

  // B(U) = nabla_U n: connection part plus the derivative of the coefficients of n.
  const std::size_t d = tangent.cols();
  Matrix b(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    const Vector u = tangent.col(a);
    Vector uv(n);
    for (std::size_t i = 0; i < m; ++i) uv[i] = u[i];
    const Vector coeff_derivative = (1.0 / r) * (uv - dot(normal, uv) * normal);
    const Vector bu = curv.connection().derivative(u, normal) + coeff_derivative;
    for (std::size_t c = 0; c < d; ++c) b(a, c) = dot(bu, tangent.col(c));
  }
  const double tr = b.trace();
  out.ricci_nn = bilinear(curv.ricci(), normal, normal);
  out.trace_term = tr * tr - (b * b).trace();
  out.gauss = out.tau - 2.0 * out.ricci_nn + out.trace_term;

  const JMap o = orthonormalize(j).j;
  Vector xhat(m);
  for (std::size_t i = 0; i < m; ++i) xhat[i] = normal[i];
  double jterm = 0.0;
  for (const Matrix& a : o.J) jterm += bilinear(a * a, xhat, xhat);
  const double md = static_cast<double>(m);
  out.closed_form = out.tau + (md - 1.0) * (md - 2.0) / (r * r) - 0.5 * jterm;
  return out;
}

bool constant_scalar_verdict(const JMap& j, double tol) { return einstein_check(j, tol).condition_ii; }

ScalarSampleStats sample_scalar_curvature_N(const JMap& j, double r, std::size_t samples,
                                            std::uint64_t seed) {
  require_valid(j);
  const Matrix p = gram_schmidt_frame(j.gram_v);
  std::mt19937_64 rng(seed);
  ScalarSampleStats s;
  s.samples = samples;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> values;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector x = r * (p * normalized(random_gaussian(j.m, rng)));
    const double v = scalar_curvature_N(j, r, x).closed_form;
    values.push_back(v);
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = samples ? sum / static_cast<double>(samples) : 0.0;
  for (double v : values) sum2 += (v - s.mean) * (v - s.mean);
  s.stddev = samples ? std::sqrt(sum2 / static_cast<double>(samples)) : 0.0;
  return s;
}

DamekWitness damek_witness(const JMap& j, const Vector& x, const Vector& y) {
  require_valid(j);
  if (x.size() != j.m || y.size() != j.m) throw ValidationError("damek_witness: X, Y must lie in v");
  if (rank(Matrix::from_columns({x, y}, j.m), 1e-10) < 2)
    throw ValidationError("damek_witness: X and Y are linearly dependent");
  const MetricLieAlgebra h = build_h(j);
  const std::size_t n = h.dim();
  Vector hx(n), hy(n);
  for (std::size_t i = 0; i < j.m; ++i) {
    hx[i] = x[i];
    hy[i] = y[i];
  }
  const Vector br = h.bracket(hx, hy);
  DamekWitness w;
  w.bracket_norm = std::sqrt(std::max(0.0, h.inner(br, br)));
  w.bracket_vanishes = w.bracket_norm < 1e-10;

  std::vector<Vector> ox, oy;
  for (const Matrix& a : j.J) {
    ox.push_back(a * x);
    oy.push_back(a * y);
  }
  const Matrix sx = orthonormal_span(Matrix::from_columns(ox, j.m), 1e-10);
  const Matrix sy = orthonormal_span(Matrix::from_columns(oy, j.m), 1e-10);
  w.orbit_intersection = (sx.cols() == 0 || sy.cols() == 0) ? 0 : subspace_intersection_dim(sx, sy);
  w.orbits_meet = w.orbit_intersection >= 1;

  if (!w.holds()) return w;

  const MetricLieAlgebra g = build_g(j, 1.0);
  const CurvatureData curv = curvature(g);
  const Vector xn = (1.0 / std::sqrt(bilinear(j.gram_v, x, x))) * x;
  const Vector yn = (1.0 / std::sqrt(bilinear(j.gram_v, y, y))) * y;
  auto lift = [&](const Vector& vpart, const Vector& zpart) {
    Vector out(g.dim());
    for (std::size_t i = 0; i < j.m; ++i) out[i] = vpart[i];
    for (std::size_t i = 0; i < j.k; ++i) out[j.m + i] = zpart[i];
    return g.frame_inverse() * out;
  };
  w.span_sectional = sectional(curv, lift(xn, Vector(j.k)), lift(yn, Vector(j.k)));

  // Pairs (Z, Z') with j(Z)X = j(Z')Y; keep the one moving X the most.
  std::vector<Vector> cols, orbit_x;
  for (const Matrix& op : j.J) orbit_x.push_back(op * xn);
  cols = orbit_x;
  for (const Matrix& op : j.J) cols.push_back(-(op * yn));
  const Matrix null = nullspace(Matrix::from_columns(cols, j.m), 1e-10);
  const Matrix moved = Matrix::from_columns(orbit_x, j.m);
  Matrix top_rows(j.k, null.cols());
  for (std::size_t r = 0; r < j.k; ++r)
    for (std::size_t c = 0; c < null.cols(); ++c) top_rows(r, c) = null(r, c);
  const Matrix image = moved * top_rows;
  const SymEigen e = sym_eigen(sym_part(image.transpose() * j.gram_v * image));
  const Vector coeff = e.vectors.col(e.values.size() - 1);
  const Vector pair = null * coeff;
  Vector z(j.k), zp(j.k);
  for (std::size_t i = 0; i < j.k; ++i) {
    z[i] = pair[i];
    zp[i] = pair[j.k + i];
  }
  const double zn = std::sqrt(bilinear(j.gram_z, z, z));
  z = (1.0 / zn) * z;
  zp = (1.0 / zn) * zp;

  auto curvature_at = [&](double a) { return sectional(curv, lift(xn, a * z), lift(yn, -a * zp)); };
  double best_a = 0.0, best = curvature_at(0.0);
  const double span = 3.0, grid = 0.05;
  for (double a = grid; a <= span + 1e-12; a += grid) {
    const double val = curvature_at(a);
    if (val > best) {
      best = val;
      best_a = a;
    }
  }
  // Golden-section refinement around the best grid point.
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::max(0.0, best_a - grid), hi = best_a + grid;
  double p = hi - ratio * (hi - lo), q = lo + ratio * (hi - lo);
  double fp = curvature_at(p), fq = curvature_at(q);
  for (int it = 0; it < 80; ++it) {
    if (fp < fq) {
      lo = p;
      p = q;
      fp = fq;
      q = lo + ratio * (hi - lo);
      fq = curvature_at(q);
    } else {
      hi = q;
      q = p;
      fq = fp;
      p = hi - ratio * (hi - lo);
      fp = curvature_at(p);
    }
  }
  const double a_ref = 0.5 * (lo + hi);
  if (curvature_at(a_ref) > best) best_a = a_ref;
  w.mixing = best_a;
  w.plane_u = lift(xn, best_a * z);
  w.plane_v = lift(yn, -best_a * zp);
  w.plane_sectional = sectional(curv, w.plane_u, w.plane_v);
  return w;
}

}  // namespace solvgeo
