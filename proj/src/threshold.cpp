#include "solvgeo/threshold.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "solvgeo/jmap_analysis.hpp"
#include "solvgeo/parallel.hpp"

namespace solvgeo {

namespace {

// M(i,l) = sum_jk R_ijkl w_j w_k, so that R(u,w,w,u) = u^T M u.
Matrix plane_form(const std::vector<double>& r, std::size_t d, const Vector& w) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (w[j] == 0.0) continue;
      for (std::size_t k = 0; k < d; ++k) {
        const double f = w[j] * w[k];
        if (f == 0.0) continue;
        const double* row = &r[((i * d + j) * d + k) * d];
        for (std::size_t l = 0; l < d; ++l) m(i, l) += f * row[l];
      }
    }
  return sym_part(m);
}

// Columns 1..d-1 of the Householder reflection sending w to a multiple of e_1.
Matrix complement_basis(const Vector& w) {
  const std::size_t d = w.size();
  Vector h = w;
  h[0] += w[0] >= 0.0 ? 1.0 : -1.0;
  const double hh = dot(h, h);
  Matrix q(d, d - 1);
  for (std::size_t c = 1; c < d; ++c)
    for (std::size_t i = 0; i < d; ++i) q(i, c - 1) = (i == c ? 1.0 : 0.0) - 2.0 * h[i] * h[c] / hh;
  return q;
}

// Best unit vector orthogonal to w for the quadratic form m.
std::pair<Vector, double> top_direction(const Matrix& m, const Vector& w) {
  const Matrix q = complement_basis(w);
  const SymEigen e = sym_eigen(sym_part(q.transpose() * m * q));
  const std::size_t top = e.values.size() - 1;
  return {normalized(q * e.vectors.col(top)), e.values[top]};
}

struct RestartResult {
  double value = -std::numeric_limits<double>::infinity();
  Vector u, v;
  bool monotone = true;
};

RestartResult ascend(const std::vector<double>& r, std::size_t d, Vector u, Vector v, const SearchOptions& opt,
                     double scale) {
  u = normalized(u);
  v -= dot(u, v) * u;
  v = normalized(v);
  RestartResult res;
  double value = bilinear(plane_form(r, d, v), u, u);
  const double slack = 1e-12 * scale;
  int stalled = 0;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    const Matrix mv = plane_form(r, d, v);
    Vector g = mv * u;
    g -= dot(u, g) * u;
    g -= dot(v, g) * v;
    if (norm(g) < opt.gradient_tol * scale && it > 0) break;
    auto [nu, val_u] = top_direction(mv, v);
    if (val_u < value - slack) res.monotone = false;
    auto [nv, val_v] = top_direction(plane_form(r, d, nu), nu);
    if (val_v < val_u - slack) res.monotone = false;
    const double gain = val_v - value;
    u = nu;
    v = nv;
    value = val_v;
    // Stalled: the block steps no longer move the value.
    stalled = gain <= 1e-13 * scale ? stalled + 1 : 0;
    if (stalled >= 3) break;
  }
  res.value = value;
  res.u = u;
  res.v = v;
  return res;
}

}  // namespace

PlaneMaximum maximize_sectional(const std::vector<double>& riemann, std::size_t d, const SearchOptions& opt,
                                const std::vector<std::pair<Vector, Vector>>& seeds) {
  if (d < 2) throw ValidationError("maximize_sectional: dimension must be at least 2");
  if (riemann.size() != d * d * d * d) throw ValidationError("maximize_sectional: tensor size mismatch");
  if (opt.restarts == 0 && seeds.empty()) throw ValidationError("maximize_sectional: need at least one restart");
  double scale = 1.0;
  for (double x : riemann) scale = std::max(scale, std::abs(x));
  const std::size_t runs = seeds.size() + opt.restarts;
  std::vector<RestartResult> results(runs);
  parallel_for(runs, [&](std::size_t i) {
    Vector u, v;
    if (i < seeds.size()) {
      u = seeds[i].first;
      v = seeds[i].second;
    } else {
      std::mt19937_64 rng(derive_seed(opt.seed, i - seeds.size()));
      u = random_gaussian(d, rng);
      v = random_gaussian(d, rng);
    }
    if (u.size() != d || v.size() != d) throw ValidationError("maximize_sectional: seed plane has wrong size");
    results[i] = ascend(riemann, d, u, v, opt, scale);
  });
  PlaneMaximum best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < runs; ++i) {
    best.restart_values.push_back(results[i].value);
    best.monotone = best.monotone && results[i].monotone;
    if (results[i].value > best.value) {
      best.value = results[i].value;
      best.u = results[i].u;
      best.v = results[i].v;
      best.best_restart = i;
    }
  }
  for (double v : best.restart_values)
    if (v >= best.value - 1e-9) ++best.saturated;
  return best;
}

PlaneMaximum max_sectional_homogeneous(const JMap& j, double c, const SearchOptions& opt,
                                       const std::vector<std::pair<Vector, Vector>>& seeds) {
  const CurvatureData curv = curvature(build_g(j, c));
  PlaneMaximum best = maximize_sectional(curv.riemann_tensor(), curv.dim(), opt, seeds);
  best.value = sectional(curv, best.u, best.v);
  return best;
}

namespace {

template <class Eval>
ThresholdReport bisect(Eval&& eval, double c_lo, double c_hi, double tol) {
  if (!(c_lo > 0.0) || !(c_hi > c_lo)) throw BracketError("bracket must satisfy 0 < c_lo < c_hi");
  if (!(tol > 0.0)) throw BracketError("tolerance must be positive");
  auto lo = eval(c_lo);
  auto hi = eval(c_hi);
  std::size_t evaluations = 2;
  const bool lo_negative = lo.value < -kNegativeSlack, hi_negative = hi.value < -kNegativeSlack;
  if (lo_negative || !hi_negative) {
    std::ostringstream os;
    os.precision(12);
    os << "invalid bracket: K_max(" << c_lo << ") = " << lo.value << " is "
       << (lo_negative ? "negative" : "non-negative") << ", K_max(" << c_hi << ") = " << hi.value << " is "
       << (hi_negative ? "negative" : "non-negative")
       << "; need a non-negative value at c_lo and a negative one at c_hi, widen the bracket";
    throw BracketError(os.str());
  }
  while (c_hi - c_lo >= tol) {
    const double mid = 0.5 * (c_lo + c_hi);
    auto val = eval(mid);
    ++evaluations;
    if (val.value < -kNegativeSlack) {
      c_hi = mid;
      hi = std::move(val);
    } else {
      c_lo = mid;
      lo = std::move(val);
    }
  }
  ThresholdReport rep;
  rep.c_low = c_lo;
  rep.c_high = c_hi;
  rep.lambda_estimate = 0.5 * (c_lo + c_hi);
  rep.tol = c_hi - c_lo;
  rep.k_max_low = lo.value;
  rep.k_max_high = hi.value;
  rep.evaluations = evaluations;
  return rep;
}

}  // namespace

ThresholdReport lambda_bisect(const JMap& j, double c_lo, double c_hi, double tol, const SearchOptions& opt) {
  require_valid(j);
  PlaneMaximum low_witness;
  double low_c = -1.0;
  auto eval = [&](double c) {
    PlaneMaximum pm = max_sectional_homogeneous(j, c, opt);
    if (pm.value >= -kNegativeSlack && c > low_c) {
      low_c = c;
      low_witness = pm;
    }
    return pm;
  };
  ThresholdReport rep = bisect(eval, c_lo, c_hi, tol);
  rep.witness_low = low_witness;
  rep.restarts = opt.restarts;
  rep.seed = opt.seed;
  return rep;
}

SubmanifoldMaximum max_sectional_submanifold(const JMap& j, double c, double r, double t1, double t2,
                                             const SubmanifoldSearchOptions& opt) {
  require_valid(j);
  if (!(t1 > 0.0) || !(t2 >= t1)) throw ValidationError("submanifold search: need 0 < t1 <= t2");
  if (!(r > 0.0)) throw ValidationError("submanifold search: r must be positive");
  const SubmanifoldGeometry geo(j, c);
  const Matrix pv = gram_schmidt_frame(j.gram_v);
  const std::size_t m = j.m;

  SubmanifoldMaximum best;
  best.value = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;

  struct Eval {
    double value;
    PlaneMaximum plane;
    Matrix frame;
  };
  auto evaluate = [&](double t, const Vector& y, const std::optional<std::pair<Vector, Vector>>& warm) {
    const SubmanifoldPoint p{t, pv * y, r};
    const WeingartenData w = weingarten(j, p);
    const std::vector<double> rt = geo.tangent_curvature(w);
    std::vector<std::pair<Vector, Vector>> seeds;
    if (warm) {
      const Vector a = w.frame.transpose() * warm->first, b = w.frame.transpose() * warm->second;
      if (norm(a) > 1e-6 && norm(b) > 1e-6) seeds.emplace_back(a, b);
    }
    ++evaluations;
    PlaneMaximum pm = maximize_sectional(rt, w.frame.cols(), opt.inner, seeds);
    return Eval{pm.value, std::move(pm), w.frame};
  };

  std::vector<double> ends{t1};
  if (t2 > t1) ends.push_back(t2);
  std::size_t start_index = 0;
  for (double t : ends)
    for (std::size_t s = 0; s < opt.starts; ++s, ++start_index) {
      std::mt19937_64 rng(derive_seed(opt.inner.seed ^ 0x9e3779b97f4a7c15ULL, start_index));
      Vector y = normalized(random_gaussian(m, rng));
      Eval cur = evaluate(t, y, std::nullopt);
      double step = 0.5;
      const std::size_t budget_end = evaluations + opt.max_evaluations;
      while (step >= opt.min_step && evaluations < budget_end && m > 1) {
        bool improved = false;
        const Matrix q = complement_basis(y);
        for (std::size_t dir = 0; dir < 2 * q.cols() && !improved && evaluations < budget_end; ++dir) {
          const double sign = dir % 2 == 0 ? 1.0 : -1.0;
          const Vector cand = normalized(y + (sign * step) * q.col(dir / 2));
          const std::pair<Vector, Vector> warm{cur.frame * cur.plane.u, cur.frame * cur.plane.v};
          Eval e = evaluate(t, cand, warm);
          if (e.value > cur.value + 1e-13 * std::max(1.0, std::abs(cur.value))) {
            cur = std::move(e);
            y = cand;
            improved = true;
          }
        }
        if (!improved) step *= 0.5;
      }
      if (cur.value > best.value) {
        best.value = cur.value;
        best.point = {t, pv * y, r};
        best.u = cur.frame * cur.plane.u;
        best.v = cur.frame * cur.plane.v;
        best.plane = cur.plane;
      }
    }
  best.value = geo.sectional(best.point, best.u, best.v);
  best.evaluations = evaluations;
  return best;
}

ThresholdReport lambda_submanifold(const JMap& j, double r, double t1, double t2, double c_lo, double c_hi,
                                   double tol, const SubmanifoldSearchOptions& opt) {
  require_valid(j);
  std::optional<SubmanifoldMaximum> low;
  double low_c = -1.0;
  auto eval = [&](double c) {
    SubmanifoldMaximum sm = max_sectional_submanifold(j, c, r, t1, t2, opt);
    if (sm.value >= -kNegativeSlack && c > low_c) {
      low_c = c;
      low = sm;
    }
    return sm;
  };
  ThresholdReport rep = bisect(eval, c_lo, c_hi, tol);
  if (low) {
    rep.witness_low = low->plane;
    rep.witness_low.u = low->u;
    rep.witness_low.v = low->v;
    rep.witness_low.value = low->value;
    rep.point_low = low->point;
  }
  rep.restarts = opt.inner.restarts;
  rep.seed = opt.inner.seed;
  return rep;
}

std::vector<FamilyRow> family_scan(const std::vector<FamilyMember>& family, double c_lo, double c_hi, double tol,
                                   const SearchOptions& opt, bool force) {
  if (family.empty()) throw ValidationError("family_scan: empty family");
  if (!force)
    for (std::size_t i = 1; i < family.size(); ++i) {
      const IsospectralityReport iso = is_isospectral(family.front().j, family[i].j);
      if (!iso.verdict) {
        std::ostringstream os;
        os << "family_scan: member t=" << family[i].t
           << " is not isospectral to the first member; pass force to scan anyway";
        throw ValidationError(os.str());
      }
    }
  std::vector<FamilyRow> rows;
  for (const FamilyMember& f : family) rows.push_back({f.t, lambda_bisect(f.j, c_lo, c_hi, tol, opt)});
  return rows;
}

void write_family_csv(std::ostream& os, const std::vector<FamilyRow>& rows) {
  const auto old = os.precision(17);
  os << "t,lambda,c_low,c_high,K_max_at_low,restarts\n";
  for (const FamilyRow& r : rows)
    os << r.t << ',' << r.report.lambda_estimate << ',' << r.report.c_low << ',' << r.report.c_high << ','
       << r.report.k_max_low << ',' << r.report.restarts << '\n';
  os.precision(old);
}

}  // namespace solvgeo
