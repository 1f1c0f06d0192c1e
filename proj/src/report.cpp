#include "solvgeo/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace solvgeo {

namespace {

std::string format(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// value <= bound
Check at_most(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value <= bound, value, bound, std::move(detail)};
}
/// value > bound
Check above(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value > bound, value, bound, std::move(detail)};
}
Check holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)};
}

Vector unit_vector(const JMap& j, Vector x, bool in_v) {
  const Matrix& gram = in_v ? j.gram_v : j.gram_z;
  return (1.0 / std::sqrt(bilinear(gram, x, x))) * x;
}

JMap conjugate(const JMap& j, const Matrix& alpha) {
  std::vector<Matrix> ops;
  const Matrix inv = inverse(alpha);
  for (const Matrix& op : j.J) ops.push_back(alpha * op * inv);
  return make_jmap(std::move(ops), inv.transpose() * j.gram_v * inv, j.gram_z);
}

// (q, q) and (q', q') for imaginary units q = i, q' = j in H + H.
std::pair<Vector, Vector> diagonal_quaternion_pair() {
  Vector x(8), y(8);
  x[1] = x[5] = 1.0;
  y[2] = y[6] = 1.0;
  return {x, y};
}

CriterionResult criterion_connection(const ReportOptions& opt) {
  CriterionResult r;
  r.budget_seconds = 5.0;
  std::mt19937_64 rng(opt.seed);
  double worst = 0.0;
  std::string where;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 4 + rng() % 5, k = 1 + rng() % 3;
    const JMap j = random_jmap(m, k, rng);
    const double c = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
    const double d = closed_form_connection(j, c).max_difference(koszul_connection(build_g(j, c)));
    if (d > worst) {
      worst = d;
      where = "m=" + std::to_string(m) + " k=" + std::to_string(k) + " c=" + format(c);
    }
  }
  r.checks.push_back(at_most("closed form vs Koszul, 20 random (j, c)", worst, 1e-12, "worst at " + where));
  return r;
}

CriterionResult criterion_constant_curvature(const ReportOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  for (double c : {0.5, 1.0, 2.0}) {
    const CurvatureData curv = curvature(build_r(4, c));
    const std::size_t n = curv.dim();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        worst = std::max(worst, std::abs(sectional(curv, Vector::unit(n, a), Vector::unit(n, b)) + c * c / 4));
    for (int s = 0; s < 200; ++s) {
      const Vector u = random_gaussian(n, rng), v = random_gaussian(n, rng);
      worst = std::max(worst, std::abs(sectional(curv, u, v) + c * c / 4));
    }
    r.checks.push_back(at_most("r(" + format(c) + "): |K + c^2/4| over frame and 200 random planes", worst, 1e-9));
  }
  return r;
}

CriterionResult criterion_mean_curvature(const ReportOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  const std::vector<std::pair<std::string, JMap>> maps{{"ex26_cross", catalog_cross_product()},
                                                       {"random m=5 k=3", random_jmap(5, 3, rng)}};
  for (const auto& [name, j] : maps)
    for (double c : {0.5, 1.5}) {
      double worst = 0.0;
      for (int s = 0; s < 5; ++s) {
        const std::size_t dim = 1 + rng() % j.k;
        const MeanCurvatureResult mc = mean_curvature(j, c, random_gaussian(j.k, dim, rng));
        worst = std::max(worst, mc.residual);
      }
      r.checks.push_back(at_most(name + ", c=" + format(c) + ": 5 random subtori", worst, 1e-12));
    }
  return r;
}

CriterionResult criterion_quaternion_pair(const ReportOptions& opt) {
  CriterionResult r;
  r.budget_seconds = 180.0;
  SearchOptions search;
  search.restarts = opt.restarts;
  search.seed = opt.seed;
  for (const char* name : {"qab:1,0", "qab:0,1", "qab:2,0", "qab:1,1"}) {
    const auto h = is_heisenberg_type(catalog_lookup(name).jmap);
    r.checks.push_back(at_most(std::string(name) + " is of Heisenberg type", h.residual, 1e-10));
  }
  const JMap j20 = catalog_qab(2, 0), j11 = catalog_qab(1, 1);
  const auto iso = is_isospectral(j20, j11);
  r.checks.push_back(holds("qab(2,0) and qab(1,1) isospectral", iso.verdict,
                           "worst trace residual " + format(iso.worst_residual)));
  EquivalenceOptions eq;
  eq.seed = opt.seed;
  const auto cert = find_equivalence(j20, j11, eq);
  r.checks.push_back(holds("qab(2,0) vs qab(1,1) equivalence obstructed",
                           cert.status == EquivalenceStatus::Obstructed,
                           to_string(cert.status) + ": " + cert.obstruction + " " + cert.obstruction_values));

  const PlaneMaximum k11 = max_sectional_homogeneous(j11, 1.0, search);
  r.checks.push_back(at_most("max K of G(qab(1,1), 1) = 0", std::abs(k11.value), 1e-6,
                             "K_max " + format(k11.value)));
  const auto [x, y] = diagonal_quaternion_pair();
  const DamekWitness w = damek_witness(j11, x, y);
  r.checks.push_back(holds("(i,i), (j,j) commute and j(z)X meets j(z)Y", w.holds()));
  const double plane = w.plane_sectional.value_or(1.0);
  r.checks.push_back(at_most("zero-curvature plane built from (i,i), (j,j)", std::abs(plane), 1e-12,
                             "K " + format(plane) + ", span{X,Y} alone gives " +
                                 format(w.span_sectional.value_or(0.0))));
  if (w.plane_sectional) {
    const PlaneMaximum seeded = max_sectional_homogeneous(j11, 1.0, search, {{w.plane_u, w.plane_v}});
    r.checks.push_back(at_most("optimizer seeded there keeps K = 0", std::abs(seeded.restart_values.front()), 1e-12));
  }
  const PlaneMaximum k20 = max_sectional_homogeneous(j20, 1.0, search);
  r.checks.push_back(at_most("max K of G(qab(2,0), 1) = -1/4", std::abs(k20.value + 0.25), 1e-6,
                             "K_max " + format(k20.value)));
  const ThresholdReport l11 = lambda_bisect(j11, 0.5, 2.0, 1e-4, search);
  r.checks.push_back(at_most("lambda(qab(1,1)) = 1", std::abs(l11.lambda_estimate - 1.0), 1e-3,
                             "bracket [" + format(l11.c_low) + ", " + format(l11.c_high) + "]"));
  const ThresholdReport l20 = lambda_bisect(j20, 0.3, 2.0, 1e-4, search);
  Check above_one = holds("lambda(qab(2,0)) bracket has c_low >= 1", l20.c_low >= 1.0,
                          "bracket [" + format(l20.c_low) + ", " + format(l20.c_high) + "], K_max(c_low) " +
                              format(l20.k_max_low) + ", K_max(c_high) " + format(l20.k_max_high));
  above_one.value = l20.c_low;
  r.checks.push_back(above_one);
  return r;
}

CriterionResult criterion_cross_pair(const ReportOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  const JMap cross = catalog_cross_product(), quat = catalog_quaternion_trivial();
  for (const auto& [name, j] : std::vector<std::pair<std::string, JMap>>{{"cross", cross}, {"quat", quat}}) {
    double worst = 0.0;
    bool shape = true;
    for (int s = 0; s < 20; ++s) {
      const Vector z = random_gaussian(3, rng);
      const double expected = std::sqrt(1.5 * bilinear(j.gram_z, z, z));
      const auto spec = spectrum_at(j, z);
      if (spec.size() != 2 || spec[0].multiplicity != 2 || spec[1].multiplicity != 4) {
        shape = false;
        continue;
      }
      worst = std::max({worst, std::abs(spec[0].omega), std::abs(spec[1].omega - expected)});
    }
    r.checks.push_back(holds(name + ": eigenvalues 0, +i omega, -i omega each of multiplicity 2 at 20 random Z", shape));
    r.checks.push_back(at_most(name + ": omega = sqrt(3/2)|Z|", worst, 1e-10));
  }
  const EinsteinReport ec = einstein_check(cross), eq = einstein_check(quat);
  r.checks.push_back(holds("cross: both Einstein conditions", ec.einstein(),
                           "residuals " + format(ec.condition_i_residual) + ", " + format(ec.condition_ii_residual)));
  r.checks.push_back(holds("quat: condition i holds", eq.condition_i));
  r.checks.push_back(above("quat: condition ii residual", eq.condition_ii_residual, 0.5));
  r.checks.push_back(holds("cross: constant scalar verdict true", constant_scalar_verdict(cross)));
  r.checks.push_back(holds("quat: constant scalar verdict false", !constant_scalar_verdict(quat)));
  const ScalarSampleStats sc = sample_scalar_curvature_N(cross, 1.0, 100, opt.seed);
  const ScalarSampleStats sq = sample_scalar_curvature_N(quat, 1.0, 100, opt.seed);
  r.checks.push_back(at_most("cross: std of sampled scalar curvature", sc.stddev, 1e-9));
  r.checks.push_back(above("quat: range of sampled scalar curvature", sq.range(), 10 * 1e-9));
  return r;
}

CriterionResult criterion_scalar_N(const ReportOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 4 + rng() % 5, k = 1 + rng() % 3;
    const JMap j = random_jmap(m, k, rng);
    for (int s = 0; s < 20; ++s) {
      const ScalarCurvatureN n = scalar_curvature_N(j, 1.0, unit_vector(j, random_gaussian(m, rng), true));
      worst = std::max(worst, std::abs(n.closed_form - n.gauss));
    }
  }
  r.checks.push_back(at_most("closed form vs Gauss equation, 20 maps x 20 points", worst, 1e-8));
  return r;
}

CriterionResult criterion_shape_operator(const ReportOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  const std::vector<std::pair<std::string, JMap>> maps{{"qab:1,1", catalog_qab(1, 1)},
                                                       {"ex26_quat", catalog_quaternion_trivial()},
                                                       {"random m=6 k=2", random_jmap(6, 2, rng)}};
  double oracle = 0.0, asym = 0.0;
  bool bitwise = true;
  for (const auto& [name, j] : maps)
    for (double t : {1.0, 2.5, 4.0}) {
      const SubmanifoldPoint p{t, unit_vector(j, random_gaussian(j.m, rng), true), 1.3};
      const WeingartenData w = weingarten(j, p);
      asym = std::max(asym, asymmetry(w.b));
      for (double c : {0.5, 1.0, 2.0}) {
        oracle = std::max(oracle, (weingarten_oracle(j, c, p) - w.b).max_abs());
        bitwise = bitwise && weingarten(j, p).b == w.b;
      }
    }
  r.checks.push_back(at_most("closed-form B vs connection oracle", oracle, 1e-10));
  r.checks.push_back(holds("B identical for every c", bitwise));
  r.checks.push_back(at_most("B self-adjoint", asym, 1e-10));

  for (const auto& [name, j] : maps) {
    const Vector x = unit_vector(j, random_gaussian(j.m, rng), true);
    double ric_lo = 1e300, ric_hi = -1e300, tr_lo = 1e300, tr_hi = -1e300;
    for (int s = 0; s <= 6; ++s) {
      const double t = 1.0 + 0.5 * s;
      const auto parts = sub_scalar(j, 1.0, {t, x, 1.0});
      ric_lo = std::min(ric_lo, parts.ricci_nn);
      ric_hi = std::max(ric_hi, parts.ricci_nn);
      tr_lo = std::min(tr_lo, parts.trace_term);
      tr_hi = std::max(tr_hi, parts.trace_term);
    }
    r.checks.push_back(at_most(name + ": Ric(n,n) spread over t in [1,4]", ric_hi - ric_lo, 1e-12));
    r.checks.push_back(above(name + ": (tr B)^2 - tr B^2 spread over t in [1,4]", tr_hi - tr_lo, 1e-6));
  }
  std::vector<double> grid;
  for (int s = 0; s <= 6; ++s) grid.push_back(1.0 + 0.5 * s);
  const auto profile = scalar_profile(catalog_qab(1, 1), 1.0, 1.0, grid, 16, opt.seed);
  double lo = 1e300, hi = -1e300;
  for (const auto& row : profile) {
    lo = std::min(lo, row.rho_mean);
    hi = std::max(hi, row.rho_mean);
  }
  r.checks.push_back(above("qab:1,1: scalar curvature profile varies with t", hi - lo, 1e-6));
  return r;
}

CriterionResult criterion_submanifold_trend(const ReportOptions& opt) {
  CriterionResult r;
  SubmanifoldSearchOptions sopt;
  sopt.inner.seed = opt.seed;
  const JMap j11 = catalog_qab(1, 1);
  std::vector<double> values;
  std::string detail;
  for (double c : {1.0, 2.0, 4.0}) {
    const SubmanifoldMaximum s = max_sectional_submanifold(j11, c, 1.0, 1.0, 4.0, sopt);
    values.push_back(s.value);
    detail += (detail.empty() ? "" : ", ") + ("K_max(" + format(c) + ") = " + format(s.value) + " at t = " +
                                              format(s.point.t));
  }
  r.checks.push_back(holds("K_max decreasing over c = 1, 2, 4", values[0] > values[1] && values[1] > values[2],
                           detail));
  r.checks.push_back(
      {"K_max < 0 at c = 4", values[2] < 0.0, values[2], 0.0, "witness attains " + format(values[2])});
  return r;
}

Json determinism_probe(const ReportOptions& opt) {
  SearchOptions search;
  search.restarts = opt.restarts;
  search.seed = opt.seed;
  EquivalenceOptions eq;
  eq.seed = opt.seed;
  SubmanifoldSearchOptions sopt;
  sopt.inner.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);
  const JMap j11 = catalog_qab(1, 1);
  const JMap planted = conjugate(j11, random_orthogonal(8, rng));
  Json out;
  out["homogeneous"] = to_json(max_sectional_homogeneous(j11, 1.0, search));
  out["submanifold"] = to_json(max_sectional_submanifold(j11, 2.0, 1.0, 1.0, 4.0, sopt));
  out["equivalence"] = to_json(find_equivalence(j11, planted, eq));
  const auto s = sample_scalar_curvature_N(catalog_quaternion_trivial(), 1.0, 50, opt.seed);
  out["scalar"] = {s.mean, s.stddev, s.min, s.max};
  return out;
}

CriterionResult criterion_properties(const ReportOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  double sym = 0.0;
  for (const std::string& name : catalog_names())
    sym = std::max(sym, curvature(build_g(catalog_lookup(name).jmap, 1.0)).symmetry_residual());
  for (int s = 0; s < 5; ++s) {
    const JMap j = random_jmap(4 + rng() % 4, 1 + rng() % 3, rng);
    sym = std::max(sym, curvature(build_g(j, 0.7)).symmetry_residual());
  }
  r.checks.push_back(at_most("curvature symmetries and Bianchi identity", sym, 1e-10));

  EquivalenceOptions eq;
  eq.seed = opt.seed;
  std::vector<std::pair<std::string, JMap>> pool;
  for (const std::string& name : catalog_names()) {
    const JMap j = catalog_lookup(name).jmap;
    pool.emplace_back(name, j);
    pool.emplace_back(name + " conjugated", conjugate(j, random_orthogonal(j.m, rng)));
  }
  std::size_t certified = 0, violations = 0;
  std::string bad;
  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t b = a; b < pool.size(); ++b) {
      const JMap &ja = pool[a].second, &jb = pool[b].second;
      if (ja.m != jb.m || ja.k != jb.k || !(ja.gram_z == jb.gram_z)) continue;
      if (find_equivalence(ja, jb, eq).status != EquivalenceStatus::Certified) continue;
      ++certified;
      if (!is_isospectral(ja, jb).verdict) {
        ++violations;
        bad += pool[a].first + " / " + pool[b].first + "; ";
      }
    }
  r.checks.push_back(holds("certified equivalence implies isospectral on catalog pairs", violations == 0,
                           std::to_string(certified) + " certified pairs" + (bad.empty() ? "" : ", failing: " + bad)));

  SearchOptions search;
  search.restarts = opt.restarts;
  search.seed = opt.seed;
  const double tol = 1e-4;
  struct Pair {
    std::string name;
    JMap a, b;
    double lo, hi;
  };
  const JMap j11 = catalog_qab(1, 1);
  const std::vector<Pair> pairs{{"qab(1,0) / qab(0,1)", catalog_qab(1, 0), catalog_qab(0, 1), 0.1, 2.0},
                                {"qab(1,1) / conjugate", j11, conjugate(j11, random_orthogonal(8, rng)), 0.5, 2.0}};
  for (const Pair& p : pairs) {
    const auto cert = find_equivalence(p.a, p.b, eq);
    const double la = lambda_bisect(p.a, p.lo, p.hi, tol, search).lambda_estimate;
    const double lb = lambda_bisect(p.b, p.lo, p.hi, tol, search).lambda_estimate;
    r.checks.push_back(holds(p.name + " certified", cert.status == EquivalenceStatus::Certified));
    r.checks.push_back(at_most(p.name + ": |lambda difference|", std::abs(la - lb), 2 * tol));
  }

  const std::string first = determinism_probe(opt).dump(), second = determinism_probe(opt).dump();
  r.checks.push_back(holds("fixed seed gives bitwise-equal results", first == second));
  return r;
}

}  // namespace

Json to_json(const std::vector<SkewEigenvalue>& s) {
  Json out = Json::array();
  for (const auto& e : s) out.push_back({{"omega", e.omega}, {"multiplicity", e.multiplicity}});
  return out;
}

Json to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"detail", c.detail}});
  return {{"ok", r.ok()}, {"checks", checks}};
}

Json to_json(const IsospectralityReport& r) {
  Json out{{"verdict", r.verdict},
           {"max_power_checked", r.max_power_checked},
           {"worst_residual", r.worst_residual},
           {"tolerance", r.tolerance}};
  if (r.witness_z) {
    out["witness_z"] = vector_to_json(*r.witness_z);
    out["witness_power"] = r.witness_power;
  }
  return out;
}

Json to_json(const EquivalenceCertificate& c) {
  Json out{{"status", to_string(c.status)}, {"residual", c.residual}, {"restarts_used", c.restarts_used}};
  if (c.status == EquivalenceStatus::Certified) {
    out["alpha"] = matrix_to_json(c.alpha);
    out["beta"] = matrix_to_json(c.beta);
  }
  if (!c.obstruction.empty()) {
    out["obstruction"] = c.obstruction;
    out["obstruction_values"] = c.obstruction_values;
  }
  return out;
}

Json to_json(const EinsteinReport& r) {
  return {{"einstein", r.einstein()},
          {"condition_i", r.condition_i},
          {"condition_i_residual", r.condition_i_residual},
          {"condition_ii", r.condition_ii},
          {"condition_ii_residual", r.condition_ii_residual},
          {"casimir_scalar", r.casimir_scalar},
          {"ricci_eigen_spread", r.ricci_eigen_spread},
          {"consistent", r.consistent()}};
}

Json to_json(const ScalarCurvatureN& s) {
  return {{"closed_form", s.closed_form}, {"gauss", s.gauss},           {"difference", s.closed_form - s.gauss},
          {"tau", s.tau},                 {"ricci_nn", s.ricci_nn},     {"trace_term", s.trace_term}};
}

Json to_json(const PlaneMaximum& p) {
  return {{"value", p.value},
          {"u", vector_to_json(p.u)},
          {"v", vector_to_json(p.v)},
          {"best_restart", p.best_restart},
          {"restart_values", p.restart_values},
          {"saturated", p.saturated},
          {"monotone", p.monotone}};
}

Json to_json(const SubmanifoldMaximum& s) {
  return {{"value", s.value},
          {"t", s.point.t},
          {"x_dir", vector_to_json(s.point.x_dir)},
          {"r", s.point.r},
          {"u", vector_to_json(s.u)},
          {"v", vector_to_json(s.v)},
          {"evaluations", s.evaluations},
          {"saturated", s.plane.saturated}};
}

Json to_json(const ThresholdReport& r) {
  Json out{{"lambda", r.lambda_estimate}, {"c_low", r.c_low},         {"c_high", r.c_high},
           {"tol", r.tol},                {"k_max_low", r.k_max_low}, {"k_max_high", r.k_max_high},
           {"restarts", r.restarts},      {"seed", r.seed},           {"evaluations", r.evaluations},
           {"witness_low", to_json(r.witness_low)}};
  if (r.point_low)
    out["point_low"] = {{"t", r.point_low->t}, {"x_dir", vector_to_json(r.point_low->x_dir)}, {"r", r.point_low->r}};
  return out;
}

Json to_json(const DamekWitness& w) {
  Json out{{"bracket_norm", w.bracket_norm},
           {"bracket_vanishes", w.bracket_vanishes},
           {"orbit_intersection", w.orbit_intersection},
           {"orbits_meet", w.orbits_meet},
           {"holds", w.holds()},
           {"zero_curvature", w.zero_curvature()}};
  if (w.span_sectional) out["span_sectional"] = *w.span_sectional;
  if (w.plane_sectional) {
    out["plane_sectional"] = *w.plane_sectional;
    out["mixing"] = w.mixing;
    out["plane_u"] = vector_to_json(w.plane_u);
    out["plane_v"] = vector_to_json(w.plane_v);
  }
  return out;
}

PairReport isospectral_pair_report(const JMap& a, const JMap& b, double c, const std::vector<Matrix>& subtori,
                                   const EquivalenceOptions& opt) {
  require_valid(a);
  require_valid(b);
  if (a.m != b.m || a.k != b.k) throw ValidationError("pair report: the maps must have equal m and k");
  const Lattice lattice = a.lattice ? Lattice(*a.lattice) : Lattice::standard(a.k);
  PairReport rep;
  rep.isospectral = is_isospectral(a, b);
  rep.premise_holds = rep.isospectral.verdict;
  rep.conclusion = rep.premise_holds
                       ? "isospectral j-maps: the quotients by the lattice over any bounded domain are isospectral"
                       : "premise fails: no isospectrality conclusion";
  rep.equivalence = find_equivalence(a, b, opt);
  rep.einstein_a = einstein_check(a);
  rep.einstein_b = einstein_check(b);
  for (const Matrix& w : subtori) {
    PairReport::Subtorus s;
    s.w = w;
    s.mean_a = mean_curvature(a, c, w);
    s.mean_b = mean_curvature(b, c, w);
    s.mean_agree = max_abs(s.mean_a.vector - s.mean_b.vector) < 1e-12;
    QuotientData qa = quotient_data(a, lattice, w), qb = quotient_data(b, lattice, w);
    s.degenerate = qa.degenerate;
    if (!s.degenerate) {
      qa.j_k.lattice = qa.lattice_k;
      qb.j_k.lattice = qb.lattice_k;
      s.quotient = find_lattice_equivalence(qa.j_k, qb.j_k, opt);
    }
    rep.subtori.push_back(std::move(s));
  }
  return rep;
}

Json to_json(const PairReport& r) {
  Json subs = Json::array();
  for (const auto& s : r.subtori) {
    Json e{{"w", matrix_to_json(s.w)},
           {"mean_curvature_a", vector_to_json(s.mean_a.vector)},
           {"mean_curvature_b", vector_to_json(s.mean_b.vector)},
           {"mean_residual_a", s.mean_a.residual},
           {"mean_residual_b", s.mean_b.residual},
           {"mean_agree", s.mean_agree},
           {"degenerate", s.degenerate}};
    if (!s.degenerate) e["quotient_equivalence"] = to_json(s.quotient);
    subs.push_back(std::move(e));
  }
  return {{"premise_holds", r.premise_holds}, {"isospectral", to_json(r.isospectral)},
          {"conclusion", r.conclusion},       {"equivalence", to_json(r.equivalence)},
          {"einstein_a", to_json(r.einstein_a)}, {"einstein_b", to_json(r.einstein_b)},
          {"subtori", subs}};
}

bool CriterionResult::passed() const {
  const bool checks_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  return checks_ok && !checks.empty() && (budget_seconds <= 0.0 || seconds <= budget_seconds);
}

std::string CriterionResult::summary_line() const {
  const auto ok = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  std::ostringstream os;
  os << "criterion " << id << ' ' << (passed() ? "PASS" : "FAIL") << "  " << title << "  (" << ok << '/'
     << checks.size() << " checks, " << format(seconds) << " s";
  if (budget_seconds > 0.0) os << " of " << format(budget_seconds) << " s budget";
  os << ')';
  return os.str();
}

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "connection closed form matches Koszul formula";
    case 2: return "r(c) has constant curvature -c^2/4";
    case 3: return "torus-fibre mean curvature is c^2 dim(w) A";
    case 4: return "quaternionic pair: H-type, isospectral, inequivalent, curvature thresholds";
    case 5: return "cross-product pair: spectra, Einstein conditions, scalar curvature";
    case 6: return "distance-sphere scalar curvature: closed form vs Gauss equation";
    case 7: return "hypersurface shape operator and scalar curvature";
    case 8: return "hypersurface max curvature decreases in c and turns negative";
    case 9: return "curvature symmetries, equivalence invariance, determinism";
    default: throw std::out_of_range("criterion id must be in 1.." + std::to_string(kCriterionCount));
  }
}

CriterionResult run_criterion(int id, const ReportOptions& opt) {
  const std::string title = criterion_title(id);
  const Stopwatch clock;
  CriterionResult r;
  switch (id) {
    case 1: r = criterion_connection(opt); break;
    case 2: r = criterion_constant_curvature(opt); break;
    case 3: r = criterion_mean_curvature(opt); break;
    case 4: r = criterion_quaternion_pair(opt); break;
    case 5: r = criterion_cross_pair(opt); break;
    case 6: r = criterion_scalar_N(opt); break;
    case 7: r = criterion_shape_operator(opt); break;
    case 8: r = criterion_submanifold_trend(opt); break;
    default: r = criterion_properties(opt); break;
  }
  r.id = id;
  r.title = title;
  r.seconds = clock.seconds();
  return r;
}

bool SuiteReport::passed() const {
  for (const auto& in : inputs)
    if (!in.validation.ok()) return false;
  for (const auto& c : criteria)
    if (!c.passed()) return false;
  for (const auto& [name, outcomes] : catalog)
    for (const auto& o : outcomes)
      if (!o.passed) return false;
  return true;
}

SuiteReport suite_report(const ReportOptions& opt, const std::vector<int>& ids) {
  const Stopwatch clock;
  SuiteReport rep;
  for (const auto& [source, j] : opt.inputs) rep.inputs.push_back({source, validate(j)});
  for (const std::string& name : catalog_names()) rep.catalog.emplace_back(name, check_claims(catalog_lookup(name)));
  std::vector<int> run = ids;
  if (run.empty())
    for (int i = 1; i <= kCriterionCount; ++i) run.push_back(i);
  for (int id : run) rep.criteria.push_back(run_criterion(id, opt));
  rep.seconds = clock.seconds();
  return rep;
}

Json to_json(const SuiteReport& r) {
  Json inputs = Json::array();
  for (const auto& in : r.inputs) inputs.push_back({{"source", in.source}, {"validation", to_json(in.validation)}});
  Json catalog = Json::array();
  for (const auto& [name, outcomes] : r.catalog) {
    Json claims = Json::array();
    for (const auto& o : outcomes)
      claims.push_back({{"id", o.claim.id},
                        {"expected", o.claim.expected},
                        {"tolerance", o.claim.tolerance},
                        {"observed", o.observed},
                        {"passed", o.passed}});
    catalog.push_back({{"entry", name}, {"claims", claims}});
  }
  Json criteria = Json::array();
  for (const auto& c : r.criteria) {
    Json checks = Json::array();
    for (const auto& k : c.checks)
      checks.push_back(
          {{"name", k.name}, {"passed", k.passed}, {"value", k.value}, {"bound", k.bound}, {"detail", k.detail}});
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"passed", c.passed()},
                        {"seconds", c.seconds},
                        {"budget_seconds", c.budget_seconds},
                        {"checks", checks}});
  }
  return {{"passed", r.passed()},
          {"seconds", r.seconds},
          {"inputs", inputs},
          {"catalog", catalog},
          {"criteria", criteria}};
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  for (const auto& in : r.inputs) {
    os << "input " << in.source << ' ' << (in.validation.ok() ? "valid" : "INVALID") << '\n';
    if (!in.validation.ok()) os << in.validation.summary();
  }
  for (const auto& [name, outcomes] : r.catalog)
    for (const auto& o : outcomes)
      os << "catalog " << name << ' ' << o.claim.id << ' ' << (o.passed ? "PASS" : "FAIL") << "  expected "
         << o.claim.expected << ", observed " << o.observed << '\n';
  for (const auto& c : r.criteria) {
    os << c.summary_line() << '\n';
    for (const auto& k : c.checks) {
      os << "    " << (k.passed ? "ok   " : "FAIL ") << k.name << ": " << format(k.value) << " vs " << format(k.bound);
      if (!k.detail.empty()) os << "  [" << k.detail << ']';
      os << '\n';
    }
  }
  os << (r.passed() ? "all checks passed" : "some checks FAILED") << " in " << format(r.seconds) << " s\n";
  return os.str();
}

}  // namespace solvgeo
