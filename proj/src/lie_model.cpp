#include "solvgeo/lie_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace solvgeo {

Matrix JMap::operator()(const Vector& z) const {
  if (z.size() != k) throw ValidationError("j(z): z has wrong dimension");
  Matrix out(m, m);
  for (std::size_t i = 0; i < k; ++i)
    if (z[i] != 0.0) out += z[i] * J[i];
  return out;
}

JMap make_jmap(std::vector<Matrix> operators, std::optional<Matrix> gram_v,
               std::optional<Matrix> gram_z) {
  JMap j;
  j.k = operators.size();
  j.m = operators.empty() ? (gram_v ? gram_v->rows() : 0) : operators.front().rows();
  j.J = std::move(operators);
  j.gram_v = gram_v ? *gram_v : Matrix::identity(j.m);
  j.gram_z = gram_z ? *gram_z : Matrix::identity(j.k);
  return j;
}

JMap random_jmap(std::size_t m, std::size_t k, std::mt19937_64& rng, bool identity_grams) {
  auto spd = [&](std::size_t n) {
    const Matrix b = random_gaussian(n, n, rng);
    return (1.0 / static_cast<double>(n)) * (b * b.transpose() + static_cast<double>(n) * Matrix::identity(n));
  };
  const Matrix gram_v = identity_grams ? Matrix::identity(m) : spd(m);
  const Matrix gram_z = identity_grams ? Matrix::identity(k) : spd(k);
  const Matrix gram_v_inv = inverse(gram_v);
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < k; ++i) ops.push_back(gram_v_inv * random_skew(m, rng));
  return make_jmap(std::move(ops), gram_v, gram_z);
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "pass " : "FAIL ") << c.name << " residual=" << c.residual;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  return os.str();
}

namespace {

InvariantCheck spd_check(const std::string& name, const Matrix& g, std::size_t n) {
  InvariantCheck c{name, 0.0, false, {}};
  if (g.rows() != n || g.cols() != n) {
    c.detail = "expected " + std::to_string(n) + "x" + std::to_string(n);
    c.residual = 1.0;
    return c;
  }
  if (n == 0) {
    c.passed = true;
    return c;
  }
  if (!all_finite(g)) {
    c.detail = "non-finite entry";
    c.residual = 1.0;
    return c;
  }
  const double asym = asymmetry(g);
  if (asym > 1e-12 * std::max(1.0, g.max_abs())) {
    c.residual = asym;
    c.detail = "not symmetric";
    return c;
  }
  const SymEigen e = sym_eigen(g);
  const double lo = e.values[0];
  c.residual = lo > 0 ? 0.0 : -lo;
  c.passed = lo > 0.0;
  if (!c.passed) {
    std::ostringstream os;
    os << "eigenvalue " << lo;
    c.detail = os.str();
  }
  return c;
}

}  // namespace

ValidationReport validate(const JMap& j, double tol) {
  ValidationReport report;
  InvariantCheck shape{"shape", 0.0, true, {}};
  if (j.J.size() != j.k) {
    shape.passed = false;
    shape.detail = "J has " + std::to_string(j.J.size()) + " operators, k = " + std::to_string(j.k);
  }
  for (std::size_t i = 0; i < j.J.size() && shape.passed; ++i)
    if (j.J[i].rows() != j.m || j.J[i].cols() != j.m) {
      shape.passed = false;
      shape.detail = "J[" + std::to_string(i) + "] is not m x m";
    }
  for (std::size_t i = 0; i < j.J.size() && shape.passed; ++i)
    if (!all_finite(j.J[i])) {
      shape.passed = false;
      shape.detail = "J[" + std::to_string(i) + "] has a non-finite entry";
    }
  shape.residual = shape.passed ? 0.0 : 1.0;
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  report.checks.push_back(spd_check("gram_v positive definite", j.gram_v, j.m));
  if (!report.checks.back().passed) return report;
  report.checks.push_back(spd_check("gram_z positive definite", j.gram_z, j.k));
  if (!report.checks.back().passed) return report;

  double worst_norm = 0.0;
  for (std::size_t i = 0; i < j.k; ++i) {
    const Matrix defect = j.J[i].transpose() * j.gram_v + j.gram_v * j.J[i];
    const double r = defect.frobenius();
    const double scale = std::max(1.0, j.J[i].frobenius() * j.gram_v.frobenius());
    InvariantCheck c{"J[" + std::to_string(i) + "] skew w.r.t. gram_v", r, r <= tol * scale, {}};
    report.checks.push_back(c);
    worst_norm = std::max(worst_norm, j.J[i].frobenius());
  }
  InvariantCheck nontrivial{"j non-trivial", worst_norm, worst_norm > 0.0, {}};
  if (!nontrivial.passed) nontrivial.detail = "all J_i vanish";
  report.checks.push_back(nontrivial);
  return report;
}

void require_valid(const JMap& j, double tol) {
  const ValidationReport r = validate(j, tol);
  if (!r.ok()) throw ValidationError("invalid j-map:\n" + r.summary());
}

OrthonormalJMap orthonormalize(const JMap& j) {
  OrthonormalJMap out;
  out.frame_v = gram_schmidt_frame(j.gram_v);
  out.frame_z = j.k == 0 ? Matrix(0, 0) : gram_schmidt_frame(j.gram_z);
  const Matrix pv_inv = inverse(out.frame_v);
  std::vector<Matrix> ops;
  ops.reserve(j.k);
  for (std::size_t a = 0; a < j.k; ++a) {
    const Matrix ja = j(out.frame_z.col(a));
    ops.push_back(pv_inv * ja * out.frame_v);
  }
  out.j = make_jmap(std::move(ops), Matrix::identity(j.m), Matrix::identity(j.k));
  out.j.m = j.m;
  if (j.lattice) out.j.lattice = inverse(out.frame_z) * *j.lattice;
  return out;
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(Matrix basis) : basis_(std::move(basis)) {
  if (!basis_.square()) throw ValidationError("lattice basis must be square");
  if (basis_.rows() > 0 && solvgeo::rank(basis_, 1e-12) < basis_.cols())
    throw ValidationError("lattice basis is singular (lattice must have full rank)");
}

Lattice Lattice::standard(std::size_t k) { return Lattice(Matrix::identity(k)); }

// ---------------------------------------------------------------------------
// MetricLieAlgebra

MetricLieAlgebra::MetricLieAlgebra(std::vector<BasisKind> labels, Matrix gram,
                                   std::vector<double> structure)
    : labels_(std::move(labels)), gram_(std::move(gram)), c_(std::move(structure)) {
  const std::size_t n = labels_.size();
  if (gram_.rows() != n || gram_.cols() != n) throw ValidationError("metric Lie algebra: gram shape");
  if (c_.size() != n * n * n) throw ValidationError("metric Lie algebra: structure constant shape");
  frame_ = gram_schmidt_frame(gram_);
  frame_inv_ = inverse(frame_);
}

std::vector<std::size_t> MetricLieAlgebra::indices(BasisKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == kind) out.push_back(i);
  return out;
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  const std::size_t n = dim();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (std::size_t l = 0; l < n; ++l) out[l] += w * structure(i, j, l);
    }
  }
  return out;
}

double MetricLieAlgebra::antisymmetry_residual() const {
  const std::size_t n = dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        worst = std::max(worst, std::abs(structure(i, j, l) + structure(j, i, l)));
  return worst;
}

double MetricLieAlgebra::jacobi_residual() const {
  const std::size_t n = dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        const Vector bi = Vector::unit(n, i), bj = Vector::unit(n, j), bl = Vector::unit(n, l);
        const Vector s = bracket(bi, bracket(bj, bl)) + bracket(bj, bracket(bl, bi)) +
                         bracket(bl, bracket(bi, bj));
        worst = std::max(worst, max_abs(s));
      }
  return worst;
}

MetricLieAlgebra MetricLieAlgebra::in_orthonormal_frame() const {
  const std::size_t n = dim();
  std::vector<double> c(n * n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vector br = frame_inv_ * bracket(frame_.col(a), frame_.col(b));
      for (std::size_t l = 0; l < n; ++l) c[(a * n + b) * n + l] = br[l];
    }
  return MetricLieAlgebra(labels_, Matrix::identity(n), std::move(c));
}

namespace {

void set_bracket(std::vector<double>& c, std::size_t n, std::size_t i, std::size_t j,
                 std::size_t l, double value) {
  c[(i * n + j) * n + l] = value;
  c[(j * n + i) * n + l] = -value;
}

}  // namespace

MetricLieAlgebra build_h(const JMap& j) {
  require_valid(j);
  const std::size_t m = j.m, k = j.k, n = m + k;
  std::vector<double> c(n * n * n, 0.0);
  // z-coordinates of [e_a, e_b] solve gram_z w = (<J_l e_a, e_b>_v)_l.
  const Matrix gz_inv = inverse(j.gram_z);
  std::vector<Matrix> gj;  // gram_v J_l, so that <J_l x, y> = y^T (gram_v J_l) x
  for (const auto& op : j.J) gj.push_back(j.gram_v * op);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Vector rhs(k);
      for (std::size_t l = 0; l < k; ++l) rhs[l] = gj[l](b, a);
      const Vector w = gz_inv * rhs;
      for (std::size_t l = 0; l < k; ++l) set_bracket(c, n, a, b, m + l, w[l]);
    }
  std::vector<BasisKind> labels(m, BasisKind::V);
  labels.insert(labels.end(), k, BasisKind::Z);
  Matrix gram(n, n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gram(a, b) = j.gram_v(a, b);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gram(m + a, m + b) = j.gram_z(a, b);
  return MetricLieAlgebra(std::move(labels), std::move(gram), std::move(c));
}

MetricLieAlgebra build_g(const JMap& j, double c) {
  if (!(c > 0.0)) throw std::domain_error("build_g: c must be positive");
  const MetricLieAlgebra h = build_h(j);
  const std::size_t nh = h.dim(), n = nh + 1, a = nh;
  std::vector<double> s(n * n * n, 0.0);
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t jj = 0; jj < nh; ++jj)
      for (std::size_t l = 0; l < nh; ++l) s[(i * n + jj) * n + l] = h.structure(i, jj, l);
  for (std::size_t i = 0; i < j.m; ++i) set_bracket(s, n, a, i, i, 0.5);
  for (std::size_t i = j.m; i < nh; ++i) set_bracket(s, n, a, i, i, 1.0);
  std::vector<BasisKind> labels = h.labels();
  labels.push_back(BasisKind::A);
  Matrix gram(n, n);
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t jj = 0; jj < nh; ++jj) gram(i, jj) = h.gram()(i, jj);
  gram(a, a) = 1.0 / (c * c);
  return MetricLieAlgebra(std::move(labels), std::move(gram), std::move(s));
}

MetricLieAlgebra build_r(std::size_t m, double c) {
  if (!(c > 0.0)) throw std::domain_error("build_r: c must be positive");
  if (m == 0) throw ValidationError("build_r: v must be non-zero");
  const std::size_t n = m + 1, a = m;
  std::vector<double> s(n * n * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) set_bracket(s, n, a, i, i, 0.5);
  std::vector<BasisKind> labels(m, BasisKind::V);
  labels.push_back(BasisKind::A);
  Matrix gram = Matrix::identity(n);
  gram(a, a) = 1.0 / (c * c);
  return MetricLieAlgebra(std::move(labels), std::move(gram), std::move(s));
}

// ---------------------------------------------------------------------------
// Quotients

namespace {

using IntMatrix = std::vector<std::vector<long long>>;

// Best rational approximation with denominator <= max_den, via continued fractions.
// Lattice subtori of interest have small denominators; a larger bound would
// accept convergents of irrationals at the 1e-9 tolerance.
std::optional<std::pair<long long, long long>> rationalize(double x, long long max_den = 1000) {
  const double tol = 1e-9 * std::max(1.0, std::abs(x));
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 1e15) break;
    const auto a = static_cast<long long>(fl);
    const long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return {{h1, k1}};
    const double frac = r - fl;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol)
    return {{h1, k1}};
  return std::nullopt;
}

// Row-reduced echelon form, floating point; returns the nonzero rows.
Matrix rref(Matrix a, double tol) {
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
    std::size_t piv = lead_row;
    for (std::size_t i = lead_row; i < a.rows(); ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (std::abs(a(piv, col)) <= tol) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(lead_row, j));
    const double p = a(lead_row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(lead_row, j) /= p;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead_row) continue;
      const double f = a(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(lead_row, j);
    }
    ++lead_row;
  }
  Matrix out(lead_row, a.cols());
  for (std::size_t i = 0; i < lead_row; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Unimodular V with A V = [H | 0]; for an integer matrix A with independent
// rows, the trailing columns of V are a basis of the integer kernel of A.
IntMatrix column_reduce(IntMatrix a, std::size_t cols) {
  IntMatrix v(cols, std::vector<long long>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;
  auto col_op = [&](std::size_t p, std::size_t q, long long x, long long y, long long u, long long w) {
    // (col p, col q) <- (x*col p + y*col q, u*col p + w*col q), det = x*w - y*u = +-1
    for (auto& row : a) {
      const long long cp = row[p], cq = row[q];
      row[p] = x * cp + y * cq;
      row[q] = u * cp + w * cq;
    }
    for (auto& row : v) {
      const long long cp = row[p], cq = row[q];
      row[p] = x * cp + y * cq;
      row[q] = u * cp + w * cq;
    }
  };
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < a.size() && pivot_col < cols; ++r) {
    for (std::size_t q = pivot_col + 1; q < cols; ++q) {
      const long long b = a[r][q];
      if (b == 0) continue;
      const long long p = a[r][pivot_col];
      if (p == 0) {
        col_op(pivot_col, q, 0, 1, 1, 0);
        continue;
      }
      // extended gcd: s*p + t*b = g
      long long old_r = p, rr = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (rr != 0) {
        const long long quo = old_r / rr;
        long long tmp = old_r - quo * rr;
        old_r = rr;
        rr = tmp;
        tmp = old_s - quo * s;
        old_s = s;
        s = tmp;
        tmp = old_t - quo * t;
        old_t = t;
        t = tmp;
      }
      const long long g = old_r;
      // new pivot = s*p + t*b = g; new col q entry = (-b/g)*p + (p/g)*b = 0
      col_op(pivot_col, q, old_s, old_t, -b / g, p / g);
    }
    if (a[r][pivot_col] != 0) ++pivot_col;
  }
  return v;
}

}  // namespace

QuotientData quotient_data(const JMap& j, const Lattice& lattice, const Matrix& w_generators) {
  require_valid(j);
  const std::size_t k = j.k;
  if (lattice.rank() != k) throw ValidationError("quotient_data: lattice rank differs from dim z");
  if (w_generators.rows() != k && w_generators.cols() != 0)
    throw ValidationError("quotient_data: w generators must be vectors of z");

  const Matrix lat = lattice.basis();
  const Matrix lat_inv = inverse(lat);

  // Rational basis of w in lattice coordinates.
  Matrix coeff_rows(w_generators.cols(), k);
  for (std::size_t g = 0; g < w_generators.cols(); ++g) {
    const Vector c = lat_inv * w_generators.col(g);
    for (std::size_t i = 0; i < k; ++i) coeff_rows(g, i) = c[i];
  }
  const double scale = std::max(1.0, coeff_rows.max_abs());
  const Matrix echelon = rref(coeff_rows, 1e-9 * scale);
  const std::size_t r = echelon.rows();
  IntMatrix w_int(r, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::pair<long long, long long>> fr;
    long long lcm = 1;
    for (std::size_t c = 0; c < k; ++c) {
      const auto q = rationalize(echelon(i, c));
      if (!q) {
        std::ostringstream os;
        os << "quotient_data: w is not spanned by lattice vectors (coefficient " << echelon(i, c)
           << " is not rational)";
        throw ValidationError(os.str());
      }
      fr.push_back(*q);
      lcm = lcm / gcd_ll(lcm, q->second) * q->second;
    }
    for (std::size_t c = 0; c < k; ++c) w_int[i][c] = fr[c].first * (lcm / fr[c].second);
  }

  // Orthonormal basis of z ⊖ w, seeded by the standard vectors in order.
  std::vector<Vector> wq;  // gram_z-orthonormal basis of w
  for (std::size_t g = 0; g < w_generators.cols(); ++g) {
    Vector v = w_generators.col(g);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& e : wq) v -= bilinear(j.gram_z, e, v) * e;
    const double nv = std::sqrt(std::max(0.0, bilinear(j.gram_z, v, v)));
    if (nv > 1e-9 * std::max(1.0, norm(w_generators.col(g)))) wq.push_back((1.0 / nv) * v);
  }
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < k && basis.size() + r < k; ++i) {
    Vector v = Vector::unit(k, i);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& e : wq) v -= bilinear(j.gram_z, e, v) * e;
      for (const Vector& e : basis) v -= bilinear(j.gram_z, e, v) * e;
    }
    const double nv = std::sqrt(std::max(0.0, bilinear(j.gram_z, v, v)));
    if (nv > 1e-9) basis.push_back((1.0 / nv) * v);
  }
  const std::size_t kk = k - r;

  QuotientData out;
  out.degenerate = kk == 0;
  out.basis_k = Matrix::from_columns(basis, k);
  out.projection = out.basis_k.transpose() * j.gram_z;

  std::vector<Matrix> ops;
  for (const Vector& u : basis) ops.push_back(j(u));
  out.j_k = make_jmap(std::move(ops), j.gram_v, Matrix::identity(kk));
  out.j_k.m = j.m;

  // Lattice complement: V2 columns [0, kk) complete Z^k ∩ w to a unimodular basis.
  IntMatrix complement_cols;
  if (r == 0) {
    out.lattice_k = out.projection * lat;
  } else if (kk == 0) {
    out.lattice_k = Matrix(0, 0);
  } else {
    const IntMatrix v1 = column_reduce(w_int, k);
    IntMatrix kernel_rows(kk, std::vector<long long>(k));
    for (std::size_t a = 0; a < kk; ++a)
      for (std::size_t i = 0; i < k; ++i) kernel_rows[a][i] = v1[i][r + a];
    const IntMatrix v2 = column_reduce(kernel_rows, k);
    Matrix comp(k, kk);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = 0; a < kk; ++a) comp(i, a) = static_cast<double>(v2[i][a]);
    out.lattice_k = out.projection * lat * comp;
  }
  if (kk > 0 && rank(out.lattice_k, 1e-10) < kk)
    throw ValidationError("quotient_data: projected lattice is not of full rank");
  if (kk > 0) out.j_k.lattice = out.lattice_k;
  return out;
}

}  // namespace solvgeo
