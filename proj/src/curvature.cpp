#include "solvgeo/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace solvgeo {

Vector ConnectionTable::derivative(const Vector& u, const Vector& w) const {
  Vector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (u[i] == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      const double f = u[i] * w[j];
      if (f == 0.0) continue;
      for (std::size_t l = 0; l < n_; ++l) out[l] += f * (*this)(i, j, l);
    }
  }
  return out;
}

double ConnectionTable::metric_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t l = 0; l < n_; ++l)
        worst = std::max(worst, std::abs((*this)(i, j, l) + (*this)(i, l, j)));
  return worst;
}

double ConnectionTable::max_difference(const ConnectionTable& other) const {
  double worst = 0.0;
  for (std::size_t a = 0; a < g_.size(); ++a) worst = std::max(worst, std::abs(g_[a] - other.g_[a]));
  return worst;
}

ConnectionTable koszul_connection(const MetricLieAlgebra& g) {
  const MetricLieAlgebra o = g.in_orthonormal_frame();
  const std::size_t n = o.dim();
  ConnectionTable gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        gamma(i, j, l) = 0.5 * (o.structure(i, j, l) + o.structure(l, i, j) + o.structure(l, j, i));
  return gamma;
}

ConnectionTable closed_form_connection(const JMap& j, double c) {
  const MetricLieAlgebra g = build_g(j, c);
  const MetricLieAlgebra h = build_h(j);
  const std::size_t m = j.m, k = j.k, n = g.dim(), a_idx = n - 1;

  struct Parts {
    Vector x, z;
    double s;
  };
  auto split = [&](const Vector& u) {
    Parts p{Vector(m), Vector(k), u[a_idx]};
    for (std::size_t i = 0; i < m; ++i) p.x[i] = u[i];
    for (std::size_t i = 0; i < k; ++i) p.z[i] = u[m + i];
    return p;
  };
  auto embed = [&](const Vector& x, const Vector& z, double s) {
    Vector out(n);
    for (std::size_t i = 0; i < m; ++i) out[i] = x[i];
    for (std::size_t i = 0; i < k; ++i) out[m + i] = z[i];
    out[a_idx] = s;
    return out;
  };
  auto bracket_vv = [&](const Vector& x, const Vector& y) {
    Vector hx(m + k), hy(m + k);
    for (std::size_t i = 0; i < m; ++i) {
      hx[i] = x[i];
      hy[i] = y[i];
    }
    const Vector b = h.bracket(hx, hy);
    Vector z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = b[m + i];
    return z;
  };

  auto nabla = [&](const Vector& uu, const Vector& ww) {
    const Parts u = split(uu), w = split(ww);
    Vector x(m), z(k);
    double s = 0.0;
    // nabla_X X* = [X,X*]/2 + (c^2/2)<X,X*> A
    z += 0.5 * bracket_vv(u.x, w.x);
    s += 0.5 * c * c * bilinear(j.gram_v, u.x, w.x);
    // nabla_X Z = -j(Z)X/2 and nabla_Z X = -j(Z)X/2
    x -= 0.5 * (j(w.z) * u.x);
    x -= 0.5 * (j(u.z) * w.x);
    // nabla_X A = -X/2, nabla_Z A = -Z
    x -= (0.5 * w.s) * u.x;
    z -= w.s * u.z;
    // nabla_Z Z* = c^2 <Z,Z*> A
    s += c * c * bilinear(j.gram_z, u.z, w.z);
    // nabla_A = 0: the A-component of u contributes nothing.
    return embed(x, z, s);
  };

  const Matrix& p = g.frame();
  const Matrix& p_inv = g.frame_inverse();
  ConnectionTable gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < n; ++jj) {
      const Vector d = p_inv * nabla(p.col(i), p.col(jj));
      for (std::size_t l = 0; l < n; ++l) gamma(i, jj, l) = d[l];
    }
  return gamma;
}

double torsion_defect(const ConnectionTable& gamma, const MetricLieAlgebra& orthonormal) {
  const std::size_t n = gamma.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        worst = std::max(worst, std::abs(gamma(i, j, l) - gamma(j, i, l) - orthonormal.structure(i, j, l)));
  return worst;
}

CurvatureData::CurvatureData(ConnectionTable gamma, std::vector<double> riemann, Matrix frame)
    : n_(gamma.dim()), gamma_(std::move(gamma)), r_(std::move(riemann)), ricci_(n_, n_),
      frame_(std::move(frame)) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t l = 0; l < n_; ++l) {
      double s = 0.0;
      for (std::size_t a = 0; a < n_; ++a) s += this->riemann(a, i, l, a);
      ricci_(i, l) = s;
    }
  ricci_ = sym_part(ricci_);
  scalar_ = ricci_.trace();
}

double CurvatureData::riemann(const Vector& a, const Vector& b, const Vector& c, const Vector& d) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      const double ab = a[i] * b[j];
      if (ab == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        const double abc = ab * c[k];
        if (abc == 0.0) continue;
        const double* row = &r_[((i * n_ + j) * n_ + k) * n_];
        double t = 0.0;
        for (std::size_t l = 0; l < n_; ++l) t += row[l] * d[l];
        s += abc * t;
      }
    }
  }
  return s;
}

double CurvatureData::symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t l = 0; l < n_; ++l) {
          const double r = riemann(i, j, k, l);
          worst = std::max(worst, std::abs(r + riemann(j, i, k, l)));
          worst = std::max(worst, std::abs(r + riemann(i, j, l, k)));
          worst = std::max(worst, std::abs(r - riemann(k, l, i, j)));
          worst = std::max(worst, std::abs(r + riemann(j, k, i, l) + riemann(k, i, j, l)));
        }
  return worst;
}

CurvatureData curvature_from_connection(const MetricLieAlgebra& o, ConnectionTable gamma, Matrix frame) {
  const std::size_t n = gamma.dim();
  std::vector<double> r(n * n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          double s = 0.0;
          for (std::size_t t = 0; t < n; ++t)
            s += gamma(j, k, t) * gamma(i, t, l) - gamma(i, k, t) * gamma(j, t, l) -
                 o.structure(i, j, t) * gamma(t, k, l);
          r[((i * n + j) * n + k) * n + l] = s;
        }
  return CurvatureData(std::move(gamma), std::move(r), std::move(frame));
}

CurvatureData curvature(const MetricLieAlgebra& g) {
  return curvature_from_connection(g.in_orthonormal_frame(), koszul_connection(g), g.frame());
}

double sectional(const CurvatureData& curv, const Vector& u, const Vector& v) {
  const double uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
  const double area = uu * vv - uv * uv;
  if (!(area > 1e-14 * uu * vv) || uu == 0.0 || vv == 0.0)
    throw ValidationError("sectional: vectors do not span a 2-plane");
  return curv.riemann(u, v, v, u) / area;
}

MeanCurvatureResult mean_curvature(const JMap& j, double c, const Matrix& w_basis) {
  const MetricLieAlgebra g = build_g(j, c);
  const ConnectionTable gamma = koszul_connection(g);
  const std::size_t m = j.m, k = j.k, n = g.dim();

  // gram_z-orthonormal basis of w, embedded into g.
  std::vector<Vector> fibre;
  for (std::size_t col = 0; col < w_basis.cols(); ++col) {
    Vector z = w_basis.col(col);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& e : fibre) {
        Vector ez(k);
        for (std::size_t i = 0; i < k; ++i) ez[i] = e[m + i];
        z -= bilinear(j.gram_z, ez, z) * ez;
      }
    const double nz = std::sqrt(std::max(0.0, bilinear(j.gram_z, z, z)));
    if (nz <= 1e-12 * std::max(1.0, norm(w_basis.col(col)))) continue;
    Vector e(n);
    for (std::size_t i = 0; i < k; ++i) e[m + i] = z[i] / nz;
    fibre.push_back(e);
  }

  MeanCurvatureResult out{Vector(n), Vector(n), 0.0, fibre.size()};
  const Matrix& p = g.frame();
  const Matrix& p_inv = g.frame_inverse();
  for (const Vector& e : fibre) {
    const Vector ef = p_inv * e;
    out.vector += p * gamma.derivative(ef, ef);
  }
  // Horizontal part: remove the component along w.
  const Vector total = out.vector;
  for (const Vector& e : fibre) out.vector -= g.inner(e, total) * e;
  out.expected[n - 1] = c * c * static_cast<double>(fibre.size());
  out.residual = max_abs(out.vector - out.expected);
  return out;
}

}  // namespace solvgeo
