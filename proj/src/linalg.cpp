#include "solvgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace solvgeo {

bool Tolerance::close(double x, double y) const {
  return std::abs(x - y) <= atol + rtol * std::max(std::abs(x), std::abs(y));
}

// ---------------------------------------------------------------------------
// Vector

Vector Vector::unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = 1.0;
  return e;
}

Vector& Vector::operator+=(const Vector& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

double max_abs(const Vector& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

Vector normalized(const Vector& a) { return (1.0 / norm(a)) * a; }

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ValidationError("from_rows: ragged rows");
    std::size_t j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Vector Matrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, const Vector& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  Matrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

Matrix Matrix::hcat(const Matrix& right) const {
  Matrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw ValidationError("matrix-vector product: shape mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double bilinear(const Matrix& m, const Vector& x, const Vector& y) { return dot(x, m * y); }

Matrix outer(const Vector& a, const Vector& b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

Matrix sym_part(const Matrix& a) { return 0.5 * (a + a.transpose()); }
Matrix skew_part(const Matrix& a) { return 0.5 * (a - a.transpose()); }
Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool all_finite(const Matrix& m) {
  return std::all_of(m.values().begin(), m.values().end(),
                     [](double x) { return std::isfinite(x); });
}

double asymmetry(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

double skew_defect(const Matrix& s) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i; j < s.cols(); ++j)
      worst = std::max(worst, std::abs(s(i, j) + s(j, i)));
  return worst;
}

// ---------------------------------------------------------------------------
// Eigen / SVD

SymEigen sym_eigen(const Matrix& m) {
  if (!m.square()) throw ValidationError("sym_eigen: matrix is not square");
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, m.max_abs());
  std::size_t wi = 0, wj = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > worst) {
        worst = std::abs(m(i, j) - m(j, i));
        wi = i;
        wj = j;
      }
  if (worst > 1e-12 * scale) {
    std::ostringstream os;
    os << "sym_eigen: matrix not symmetric, max asymmetry " << worst << " at (" << wi << ","
       << wj << ")";
    throw ValidationError(os.str());
  }
  if (!all_finite(m)) throw ValidationError("sym_eigen: non-finite entry");

  Matrix a = sym_part(m);
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off == 0.0 || std::sqrt(off) <= 1e-300) break;
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        // Skip entries already negligible against both diagonals.
        if (std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq)) ) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymEigen out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Svd svd(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix u = a;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u(i, p), uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm(u.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  Svd out{Matrix(m, n), Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = sigma[j] > 0 ? u(i, j) / sigma[j] : 0.0;
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
  }
  return out;
}

std::vector<SkewEigenvalue> skew_spectrum(const Matrix& s, double cluster_tol) {
  if (!s.square()) throw ValidationError("skew_spectrum: matrix is not square");
  const double scale = std::max(1.0, s.max_abs());
  const double defect = skew_defect(s);
  if (defect > 1e-12 * scale) {
    std::ostringstream os;
    os << "skew_spectrum: matrix not skew, max |s_ij + s_ji| = " << defect;
    throw ValidationError(os.str());
  }
  // Singular values of a normal matrix are the moduli of its eigenvalues, so
  // they equal the omegas (each nonzero omega twice) to absolute accuracy
  // eps * |s|, without the square-root loss of eig(-s^2).
  const Svd d = svd(s);
  std::vector<double> omegas(d.sigma.values().begin(), d.sigma.values().end());
  std::sort(omegas.begin(), omegas.end());
  const double omega_scale = std::max(1.0, omegas.empty() ? 0.0 : omegas.back());
  const double tol = cluster_tol * omega_scale;
  std::vector<SkewEigenvalue> out;
  std::size_t i = 0;
  while (i < omegas.size()) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < omegas.size() && omegas[j] - omegas[i] <= tol) sum += omegas[j++];
    double omega = sum / static_cast<double>(j - i);
    if (omega <= tol) omega = 0.0;
    out.push_back({omega, j - i});
    i = j;
  }
  return out;
}

Matrix nullspace(const Matrix& m, double tol) {
  const std::size_t n = m.cols();
  if (n == 0) return Matrix(0, 0);
  const Svd d = svd(m);
  const double cutoff = tol * std::max(1.0, d.sigma[0]);
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < n; ++k)
    if (d.sigma[k] <= cutoff) basis.push_back(d.v.col(k));
  return Matrix::from_columns(basis, n);
}

std::size_t rank(const Matrix& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  const Svd d = svd(m);
  const double cutoff = tol * std::max(1.0, d.sigma[0]);
  std::size_t r = 0;
  for (double s : d.sigma.values())
    if (s > cutoff) ++r;
  return r;
}

namespace {

// Two-pass modified Gram-Schmidt; returns indices of dependent columns.
Matrix gram_schmidt_columns(const Matrix& basis, double tol, std::vector<std::size_t>& dependent) {
  std::vector<Vector> q;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    Vector v = basis.col(j);
    const double original = norm(v);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& e : q) v -= dot(e, v) * e;
    const double r = norm(v);
    if (original == 0.0 || r <= tol * std::max(1.0, original)) {
      dependent.push_back(j);
      continue;
    }
    q.push_back((1.0 / r) * v);
  }
  return Matrix::from_columns(q, basis.rows());
}

}  // namespace

Matrix orthonormalize(const Matrix& basis, double tol) {
  std::vector<std::size_t> dependent;
  Matrix q = gram_schmidt_columns(basis, tol, dependent);
  if (!dependent.empty()) {
    std::ostringstream os;
    os << "orthonormalize: rank-deficient basis, dependent columns:";
    for (std::size_t j : dependent) os << ' ' << j;
    throw ValidationError(os.str());
  }
  return q;
}

Matrix orthonormal_span(const Matrix& generators, double tol) {
  std::vector<std::size_t> dependent;
  return gram_schmidt_columns(generators, tol, dependent);
}

std::size_t subspace_intersection_dim(const Matrix& basis_a, const Matrix& basis_b, double tol) {
  if (basis_a.rows() != basis_b.rows())
    throw ValidationError("subspace_intersection_dim: ambient dimensions differ");
  const Matrix qa = orthonormalize(basis_a, tol);
  const Matrix qb = orthonormalize(basis_b, tol);
  const std::size_t r = rank(qa.hcat(qb), tol);
  return qa.cols() + qb.cols() - r;
}

Matrix gram_schmidt_frame(const Matrix& gram) {
  if (!gram.square()) throw ValidationError("gram matrix is not square");
  const std::size_t n = gram.rows();
  if (n == 0) return Matrix(0, 0);
  if (asymmetry(gram) > 1e-12 * std::max(1.0, gram.max_abs()))
    throw ValidationError("gram matrix is not symmetric");
  const SymEigen e = sym_eigen(gram);
  if (e.values[0] <= 0.0) {
    std::ostringstream os;
    os << "gram matrix is not positive definite: eigenvalue " << e.values[0];
    throw ValidationError(os.str());
  }
  Matrix p(n, n);
  std::vector<Vector> done;
  for (std::size_t j = 0; j < n; ++j) {
    Vector v = Vector::unit(n, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& e2 : done) v -= bilinear(gram, e2, v) * e2;
    v *= 1.0 / std::sqrt(bilinear(gram, v, v));
    done.push_back(v);
    p.set_col(j, v);
  }
  return p;
}

namespace {

struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

Lu lu_decompose(const Matrix& a) {
  if (!a.square()) throw ValidationError("LU: matrix is not square");
  const std::size_t n = a.rows();
  Lu f{a, std::vector<std::size_t>(n), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  const double scale = std::max(1e-300, a.max_abs());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
    if (std::abs(f.lu(piv, k)) <= 1e-14 * scale) {
      f.singular = true;
      return f;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      f.lu(i, k) /= f.lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= f.lu(i, k) * f.lu(k, j);
    }
  }
  return f;
}

Vector lu_solve(const Lu& f, const Vector& b) {
  const std::size_t n = f.lu.rows();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

}  // namespace

Matrix inverse(const Matrix& a) {
  const Lu f = lu_decompose(a);
  if (f.singular) throw ValidationError("inverse: matrix is singular");
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) inv.set_col(j, lu_solve(f, Vector::unit(n, j)));
  return inv;
}

Vector solve(const Matrix& a, const Vector& b) {
  const Lu f = lu_decompose(a);
  if (f.singular) throw ValidationError("solve: matrix is singular");
  return lu_solve(f, b);
}

double determinant(const Matrix& a) {
  const Lu f = lu_decompose(a);
  if (f.singular) return 0.0;
  double d = f.sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

Matrix cayley(const Matrix& skew) {
  const std::size_t n = skew.rows();
  const Matrix id = Matrix::identity(n);
  return inverse(id - 0.5 * skew) * (id + 0.5 * skew);
}

// ---------------------------------------------------------------------------
// Random

Matrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (double& x : m.values()) x = g(rng);
  return m;
}

Vector random_gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (double& x : v.values()) x = g(rng);
  return v;
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  // Gram-Schmidt of a Gaussian matrix is QR with positive diag(R): Haar on O(n).
  Matrix g = random_gaussian(n, n, rng);
  return orthonormalize(g, 1e-12);
}

Matrix random_skew(std::size_t n, std::mt19937_64& rng) {
  return skew_part(random_gaussian(n, n, rng));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace solvgeo
