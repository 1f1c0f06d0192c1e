#include "solvgeo/jmap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "solvgeo/parallel.hpp"

namespace solvgeo {

namespace {

void require_same_shape(const JMap& a, const JMap& b, const char* what) {
  if (a.m != b.m || a.k != b.k) {
    std::ostringstream os;
    os << what << ": dimension mismatch (m=" << a.m << ", k=" << a.k << ") vs (m=" << b.m
       << ", k=" << b.k << ")";
    throw ValidationError(os.str());
  }
}

double trace_even_power(const Matrix& s, std::size_t p) {
  const Matrix s2 = s * s;
  Matrix acc = s2;
  for (std::size_t i = 1; i < p; ++i) acc = acc * s2;
  return acc.trace();
}

// Advances a mixed-radix counter over {0..top}^k; false after the last point.
bool next_grid_point(std::vector<int>& idx, int top) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < top) {
      ++idx[i];
      return true;
    }
    idx[i] = 0;
  }
  return false;
}

std::string format_values(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(10);
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

// Frame with S x = w y, S y = -w x on consecutive column pairs, pairs ordered
// by decreasing w, kernel vectors last. S must be skew.
struct SkewNormalForm {
  Matrix q;
  std::vector<double> omegas;
};

SkewNormalForm skew_normal_form(const Matrix& s) {
  const std::size_t n = s.rows();
  const SymEigen e = sym_eigen(sym_part(-(s * s)));
  const double scale = std::max(1.0, std::abs(e.values[n - 1]));
  std::vector<Vector> cols;
  SkewNormalForm out;
  std::size_t hi = n;
  while (hi > 0) {
    std::size_t lo = hi - 1;
    while (lo > 0 && std::abs(e.values[lo - 1] - e.values[hi - 1]) <= 1e-8 * scale) --lo;
    Matrix cluster = e.vectors.columns(lo, hi - lo);
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += e.values[i];
    mean /= static_cast<double>(hi - lo);
    const double omega = std::sqrt(std::max(0.0, mean));
    if (omega <= 1e-7 * std::sqrt(scale)) {
      for (std::size_t c = 0; c < cluster.cols(); ++c) cols.push_back(cluster.col(c));
    } else {
      while (cluster.cols() > 0) {
        const Vector x = normalized(cluster.col(0));
        Vector y = (1.0 / omega) * (s * x);
        y -= dot(x, y) * x;
        y = normalized(y);
        cols.push_back(x);
        cols.push_back(y);
        out.omegas.push_back(omega);
        Matrix rest(n, cluster.cols());
        for (std::size_t c = 0; c < cluster.cols(); ++c) {
          Vector v = cluster.col(c);
          v -= dot(x, v) * x;
          v -= dot(y, v) * y;
          rest.set_col(c, v);
        }
        cluster = orthonormal_span(rest, 1e-6);
      }
    }
    hi = lo;
  }
  out.q = orthonormalize(Matrix::from_columns(cols, n), 1e-6);
  return out;
}

struct Invariant {
  std::string name;
  std::vector<double> values;
};

std::vector<Invariant> equivalence_invariants(const JMap& oj) {
  std::vector<Invariant> out;
  out.push_back({"skew-commutant dimension", {static_cast<double>(skew_commutant_dim(oj))}});
  Matrix casimir(oj.m, oj.m);
  for (const Matrix& a : oj.J) casimir += a * a;
  out.push_back({"spectrum of sum J_i^2", sym_eigen(sym_part(casimir)).values.std()});
  Matrix pairing(oj.k, oj.k);
  for (std::size_t i = 0; i < oj.k; ++i)
    for (std::size_t l = 0; l < oj.k; ++l) pairing(i, l) = -(oj.J[i] * oj.J[l]).trace();
  out.push_back({"spectrum of -tr(J_i J_l)", sym_eigen(sym_part(pairing)).values.std()});
  double quartic = 0.0;
  for (std::size_t i = 0; i < oj.k; ++i)
    for (std::size_t l = 0; l < oj.k; ++l) {
      const Matrix ii = oj.J[i] * oj.J[i], ll = oj.J[l] * oj.J[l], il = oj.J[i] * oj.J[l];
      quartic += 2.0 * (ii * ll).trace() + (il * il).trace();
    }
  out.push_back({"quartic moment", {quartic}});
  return out;
}

// Orthonormal-frame objective sum_i |alpha M_i alpha^T - B_i|^2, M_i = sum_l beta_li A_l.
struct Objective {
  const std::vector<Matrix>& a;
  const std::vector<Matrix>& b;

  std::vector<Matrix> mixed(const Matrix& beta) const {
    std::vector<Matrix> m(b.size(), Matrix(a.front().rows(), a.front().rows()));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t l = 0; l < a.size(); ++l)
        if (beta(l, i) != 0.0) m[i] += beta(l, i) * a[l];
    return m;
  }

  double value(const Matrix& alpha, const Matrix& beta) const {
    const std::vector<Matrix> m = mixed(beta);
    const Matrix at = alpha.transpose();
    double f = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const Matrix d = alpha * m[i] * at - b[i];
      f += d.frobenius() * d.frobenius();
    }
    return f;
  }

  // Riemannian gradients as skew generators (left-trivialized).
  void gradient(const Matrix& alpha, const Matrix& beta, Matrix& omega_a, Matrix& omega_b) const {
    const std::vector<Matrix> m = mixed(beta);
    const Matrix at = alpha.transpose();
    Matrix ga(alpha.rows(), alpha.cols());
    Matrix gb(beta.rows(), beta.cols());
    std::vector<Matrix> conj;
    for (const Matrix& al : a) conj.push_back(alpha * al * at);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const Matrix d = alpha * m[i] * at - b[i];
      ga -= 4.0 * (d * alpha * m[i]);
      for (std::size_t l = 0; l < a.size(); ++l) {
        double s = 0.0;
        const auto dv = d.values();
        const auto cv = conj[l].values();
        for (std::size_t e = 0; e < dv.size(); ++e) s += dv[e] * cv[e];
        gb(l, i) = 2.0 * s;
      }
    }
    omega_a = skew_part(at * ga);
    omega_b = skew_part(beta.transpose() * gb);
  }
};

struct Descent {
  Matrix alpha, beta;
  double f = 0.0;
};

Descent descend(const Objective& obj, Matrix alpha, Matrix beta, bool beta_fixed,
                std::size_t max_iterations) {
  double f = obj.value(alpha, beta);
  double step = 0.1;
  Matrix oa, ob;
  for (std::size_t it = 0; it < max_iterations && f > 1e-24; ++it) {
    obj.gradient(alpha, beta, oa, ob);
    if (beta_fixed) ob = Matrix(beta.rows(), beta.cols());
    const double g2 = oa.frobenius() * oa.frobenius() + ob.frobenius() * ob.frobenius();
    if (std::sqrt(g2) < 1e-13) break;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Matrix na = alpha * cayley(-step * oa);
      const Matrix nb = beta_fixed ? beta : beta * cayley(-step * ob);
      const double nf = obj.value(na, nb);
      if (nf <= f - 1e-4 * step * g2) {
        alpha = na;
        beta = nb;
        f = nf;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(alpha), std::move(beta), f};
}

struct SearchResult {
  Matrix alpha, beta;  // orthonormal frames
  double f = 0.0;
  std::size_t restarts_used = 0;
};

SearchResult search_orthonormal(const JMap& oa, const JMap& ob, const EquivalenceOptions& opt,
                                const std::optional<Matrix>& fixed_beta) {
  const std::size_t m = oa.m, k = oa.k;
  if (k == 1) {
    // Single operator: match real normal forms exactly.
    const Matrix beta = fixed_beta ? *fixed_beta : Matrix::identity(1);
    const Matrix s = beta(0, 0) * oa.J[0];
    const SkewNormalForm na = skew_normal_form(s), nb = skew_normal_form(ob.J[0]);
    const Matrix alpha = nb.q * na.q.transpose();
    const Objective obj{oa.J, ob.J};
    return {alpha, beta, obj.value(alpha, beta), 1};
  }
  const Objective obj{oa.J, ob.J};
  constexpr std::size_t batch = 8;
  SearchResult best;
  best.f = std::numeric_limits<double>::infinity();
  const std::size_t total = std::max<std::size_t>(1, opt.restarts);
  for (std::size_t first = 0; first < total; first += batch) {
    const std::size_t count = std::min(batch, total - first);
    std::vector<Descent> runs(count);
    parallel_for(count, [&](std::size_t i) {
      std::mt19937_64 rng(derive_seed(opt.seed, first + i));
      Matrix alpha = random_orthogonal(m, rng);
      Matrix beta = fixed_beta ? *fixed_beta : random_orthogonal(k, rng);
      runs[i] = descend(obj, std::move(alpha), std::move(beta), fixed_beta.has_value(),
                        opt.max_iterations);
    });
    for (std::size_t i = 0; i < count; ++i)
      if (runs[i].f < best.f) {
        best.alpha = runs[i].alpha;
        best.beta = runs[i].beta;
        best.f = runs[i].f;
      }
    best.restarts_used = first + count;
    if (best.f < opt.certify_below * 1e-2) break;
  }
  return best;
}

struct Frames {
  OrthonormalJMap a, b;
};

EquivalenceCertificate finish(const JMap& a, const JMap& b, const Frames& fr, const SearchResult& s,
                              const EquivalenceOptions& opt) {
  EquivalenceCertificate cert;
  cert.alpha = fr.b.frame_v * s.alpha * inverse(fr.a.frame_v);
  cert.beta = fr.a.frame_z * s.beta * inverse(fr.b.frame_z);
  cert.residual = equivalence_residual(a, b, cert.alpha, cert.beta);
  cert.restarts_used = s.restarts_used;
  cert.status = cert.residual < opt.certify_below ? EquivalenceStatus::Certified
                                                  : EquivalenceStatus::Inconclusive;
  return cert;
}

}  // namespace

IsospectralityReport is_isospectral(const JMap& a, const JMap& b, double rtol) {
  require_same_shape(a, b, "is_isospectral");
  require_valid(a);
  require_valid(b);
  const Matrix dz = a.gram_z - b.gram_z;
  if (dz.max_abs() > 1e-12 * std::max(1.0, a.gram_z.max_abs()))
    throw ValidationError("is_isospectral: the maps must share the inner product on z");
  IsospectralityReport rep;
  rep.tolerance = rtol;
  rep.max_power_checked = a.m / 2;
  rep.verdict = true;
  const std::size_t k = a.k;
  for (std::size_t p = 1; p <= rep.max_power_checked; ++p) {
    std::vector<int> idx(k, 0);
    do {
      Vector z(k);
      for (std::size_t i = 0; i < k; ++i) z[i] = idx[i];
      const double ta = trace_even_power(a(z), p), tb = trace_even_power(b(z), p);
      const double diff = std::abs(ta - tb);
      rep.worst_residual = std::max(rep.worst_residual, diff);
      if (diff > rtol * std::max({1.0, std::abs(ta), std::abs(tb)}) && rep.verdict) {
        rep.verdict = false;
        rep.witness_z = z;
        rep.witness_power = p;
      }
    } while (next_grid_point(idx, static_cast<int>(2 * p)));
  }
  return rep;
}

std::vector<SkewEigenvalue> spectrum_at(const JMap& j, const Vector& z) {
  require_valid(j);
  const Matrix p = gram_schmidt_frame(j.gram_v);
  return skew_spectrum(inverse(p) * j(z) * p);
}

HeisenbergTypeReport is_heisenberg_type(const JMap& j, double tol) {
  const JMap o = orthonormalize(j).j;
  HeisenbergTypeReport rep;
  const Matrix id = Matrix::identity(o.m);
  for (std::size_t i = 0; i < o.k; ++i)
    for (std::size_t l = i; l < o.k; ++l) {
      Matrix s = o.J[i] * o.J[l] + o.J[l] * o.J[i];
      if (i == l) s += 2.0 * id;
      rep.residual = std::max(rep.residual, s.max_abs());
    }
  rep.passed = rep.residual <= tol;
  return rep;
}

std::size_t skew_commutant_dim(const JMap& j, double tol) {
  const JMap o = orthonormalize(j).j;
  const std::size_t m = o.m, unknowns = m * (m - 1) / 2;
  if (unknowns == 0) return 0;
  Matrix system(o.k * m * m, unknowns);
  std::size_t col = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b, ++col) {
      Matrix e(m, m);
      e(a, b) = 1.0;
      e(b, a) = -1.0;
      for (std::size_t i = 0; i < o.k; ++i) {
        const Matrix c = commutator(e, o.J[i]);
        for (std::size_t r = 0; r < m * m; ++r) system(i * m * m + r, col) = c.values()[r];
      }
    }
  return unknowns - rank(system, tol);
}

std::string to_string(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::Certified:
      return "certified";
    case EquivalenceStatus::Inconclusive:
      return "inconclusive";
    case EquivalenceStatus::Obstructed:
      return "obstructed";
  }
  return "unknown";
}

double equivalence_residual(const JMap& a, const JMap& b, const Matrix& alpha, const Matrix& beta) {
  const Matrix alpha_inv = inverse(alpha);
  double f = 0.0;
  for (std::size_t i = 0; i < b.k; ++i) {
    const Matrix d = alpha * a(beta.col(i)) * alpha_inv - b.J[i];
    f += d.frobenius() * d.frobenius();
  }
  return f;
}

EquivalenceCertificate find_equivalence(const JMap& a, const JMap& b, const EquivalenceOptions& opt) {
  require_same_shape(a, b, "find_equivalence");
  require_valid(a);
  require_valid(b);
  const Frames fr{orthonormalize(a), orthonormalize(b)};

  const auto ia = equivalence_invariants(fr.a.j), ib = equivalence_invariants(fr.b.j);
  for (std::size_t n = 0; n < ia.size(); ++n) {
    double scale = 1.0, diff = 0.0;
    for (std::size_t i = 0; i < ia[n].values.size(); ++i) {
      scale = std::max({scale, std::abs(ia[n].values[i]), std::abs(ib[n].values[i])});
      diff = std::max(diff, std::abs(ia[n].values[i] - ib[n].values[i]));
    }
    if (diff > 1e-8 * scale) {
      EquivalenceCertificate cert;
      cert.status = EquivalenceStatus::Obstructed;
      cert.obstruction = ia[n].name;
      cert.obstruction_values = format_values(ia[n].values) + " vs " + format_values(ib[n].values);
      cert.residual = std::numeric_limits<double>::infinity();
      return cert;
    }
  }
  return finish(a, b, fr, search_orthonormal(fr.a.j, fr.b.j, opt, std::nullopt), opt);
}

std::vector<Matrix> lattice_isometries(const Matrix& from, const Matrix& gram_from, const Matrix& to,
                                       const Matrix& gram_to) {
  const std::size_t k = from.rows();
  if (k > 3) throw ValidationError("lattice isometry enumeration supports dim z <= 3 only");
  if (to.rows() != k || from.cols() != k || to.cols() != k)
    throw ValidationError("lattice isometry: lattices must be k x k");
  const Matrix gf = from.transpose() * gram_from * from;  // Gram matrix of the source basis
  const Matrix to_inv = inverse(to);
  const Matrix p = gram_schmidt_frame(gram_to);
  const double sigma_min = svd(inverse(p) * to).sigma[k - 1];
  double longest = 0.0;
  for (std::size_t i = 0; i < k; ++i) longest = std::max(longest, std::sqrt(gf(i, i)));
  const double tol = 1e-8 * std::max(1.0, longest * longest);
  const auto bound = static_cast<long long>(std::floor(longest / sigma_min + 1e-9));
  const double points = std::pow(2.0 * static_cast<double>(bound) + 1.0, static_cast<double>(k));
  if (points > 5e6) throw ValidationError("lattice isometry: enumeration box too large");

  // Candidate images for each source generator, matched by norm.
  std::vector<std::vector<Vector>> candidates(k);
  std::vector<long long> c(k, -bound);
  for (;;) {
    Vector coeff(k);
    for (std::size_t i = 0; i < k; ++i) coeff[i] = static_cast<double>(c[i]);
    const Vector v = to * coeff;
    const double nv = bilinear(gram_to, v, v);
    for (std::size_t i = 0; i < k; ++i)
      if (std::abs(nv - gf(i, i)) <= tol) candidates[i].push_back(v);
    std::size_t d = 0;
    while (d < k && c[d] == bound) c[d++] = -bound;
    if (d == k) break;
    ++c[d];
  }

  std::vector<Matrix> out;
  std::vector<Vector> chosen;
  const Matrix from_inv = inverse(from);
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) {
      const Matrix images = Matrix::from_columns(chosen, k);
      const Matrix coeff = to_inv * images;
      double frac = 0.0;
      for (double x : coeff.values()) frac = std::max(frac, std::abs(x - std::round(x)));
      if (frac > 1e-6) return;
      if (std::abs(std::abs(determinant(coeff)) - 1.0) > 1e-6) return;
      out.push_back(images * from_inv);
      return;
    }
    for (const Vector& v : candidates[i]) {
      bool ok = true;
      for (std::size_t l = 0; l < i && ok; ++l)
        ok = std::abs(bilinear(gram_to, chosen[l], v) - gf(l, i)) <= tol;
      if (!ok) continue;
      chosen.push_back(v);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return out;
}

EquivalenceCertificate find_lattice_equivalence(const JMap& a, const JMap& b,
                                                const EquivalenceOptions& opt) {
  require_same_shape(a, b, "find_lattice_equivalence");
  require_valid(a);
  require_valid(b);
  if (!a.lattice || !b.lattice) throw ValidationError("find_lattice_equivalence: both maps need a lattice");
  if (a.k > 3) throw ValidationError("find_lattice_equivalence: unsupported for dim z > 3");
  const std::vector<Matrix> betas = lattice_isometries(*b.lattice, b.gram_z, *a.lattice, a.gram_z);
  if (betas.empty()) {
    EquivalenceCertificate cert;
    cert.status = EquivalenceStatus::Obstructed;
    cert.obstruction = "lattice isometry";
    const Matrix ga = a.lattice->transpose() * a.gram_z * *a.lattice;
    const Matrix gb = b.lattice->transpose() * b.gram_z * *b.lattice;
    cert.obstruction_values = "no isometry maps the lattices onto each other (Gram " +
                              format_values(std::vector<double>(ga.values().begin(), ga.values().end())) +
                              " vs " +
                              format_values(std::vector<double>(gb.values().begin(), gb.values().end())) + ")";
    cert.residual = std::numeric_limits<double>::infinity();
    return cert;
  }
  const Frames fr{orthonormalize(a), orthonormalize(b)};
  EquivalenceCertificate best;
  best.residual = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  for (const Matrix& beta : betas) {
    const Matrix beta_on = inverse(fr.a.frame_z) * beta * fr.b.frame_z;
    EquivalenceCertificate cert = finish(a, b, fr, search_orthonormal(fr.a.j, fr.b.j, opt, beta_on), opt);
    used += cert.restarts_used;
    if (cert.residual < best.residual) best = cert;
    if (best.status == EquivalenceStatus::Certified) break;
  }
  best.restarts_used = used;
  return best;
}

EquivalenceIsometry build_equivalence_isometry(const JMap& a, const JMap& b,
                                               const EquivalenceCertificate& cert, double c, double tol) {
  if (cert.status != EquivalenceStatus::Certified)
    throw ValidationError("build_equivalence_isometry: certificate is not certified");
  require_same_shape(a, b, "build_equivalence_isometry");
  const MetricLieAlgebra ga = build_g(a, c), gb = build_g(b, c);
  const std::size_t m = a.m, k = a.k, n = ga.dim();
  const Matrix beta_inv = inverse(cert.beta);
  EquivalenceIsometry out;
  out.tau = Matrix(n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < m; ++l) out.tau(i, l) = cert.alpha(i, l);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) out.tau(m + i, m + l) = beta_inv(i, l);
  out.tau(n - 1, n - 1) = 1.0;

  out.gram_residual = (out.tau.transpose() * gb.gram() * out.tau - ga.gram()).max_abs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = i + 1; l < n; ++l) {
      const Vector lhs = out.tau * ga.bracket(Vector::unit(n, i), Vector::unit(n, l));
      const Vector rhs = gb.bracket(out.tau.col(i), out.tau.col(l));
      out.bracket_residual = std::max(out.bracket_residual, max_abs(lhs - rhs));
    }
  out.valid = out.gram_residual <= tol && out.bracket_residual <= tol;
  return out;
}

}  // namespace solvgeo
