#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvgeo/submanifold.hpp"

namespace solvgeo {

struct SearchOptions {
  std::size_t restarts = 64;
  std::uint64_t seed = 0x5eed;
  std::size_t max_iterations = 500;
  double gradient_tol = 1e-12;
};

/// Best 2-plane found by multi-start ascent. `value` is attained by the
/// witness (u, v), so it is a lower bound for the true maximum.
struct PlaneMaximum {
  double value = 0.0;
  Vector u, v;                         ///< orthonormal, in the tensor's frame coordinates
  std::size_t best_restart = 0;
  std::vector<double> restart_values;  ///< final value per restart, in restart order
  std::size_t saturated = 0;           ///< restarts ending within 1e-9 of the best value
  bool monotone = true;                ///< no restart ever decreased its objective
};

/// Maximizes R(u,v,v,u) over orthonormal pairs for a dense d^4 tensor
/// (R_ijkl = <R(e_i,e_j)e_k,e_l>). Each restart alternates exact
/// maximization in u (v fixed) and in v (u fixed); both are top eigenvector
/// problems, so every step is non-decreasing. `seeds` are extra starting
/// planes tried before the random ones.
PlaneMaximum maximize_sectional(const std::vector<double>& riemann, std::size_t d, const SearchOptions& opt,
                                const std::vector<std::pair<Vector, Vector>>& seeds = {});

/// Max sectional curvature of G(j,c); witness in the orthonormal frame of build_g(j,c).
PlaneMaximum max_sectional_homogeneous(const JMap& j, double c, const SearchOptions& opt = {},
                                       const std::vector<std::pair<Vector, Vector>>& seeds = {});

/// Strictly negative verdict used by the bisections.
constexpr double kNegativeSlack = 1e-9;

struct ThresholdReport {
  double lambda_estimate = 0.0;
  double c_low = 0.0, c_high = 0.0;
  double tol = 0.0;
  double k_max_low = 0.0, k_max_high = 0.0;
  PlaneMaximum witness_low;
  std::optional<SubmanifoldPoint> point_low;  ///< for submanifold searches
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

/// Raised when the initial bracket does not straddle the sign change.
class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bisection in c on the sign of the maximal sectional curvature, assuming
/// mixed curvature below the threshold and strictly negative curvature above.
/// Requires K_max(c_lo) >= -1e-9 and K_max(c_hi) < -1e-9.
ThresholdReport lambda_bisect(const JMap& j, double c_lo, double c_hi, double tol, const SearchOptions& opt = {});

struct SubmanifoldMaximum {
  double value = 0.0;
  SubmanifoldPoint point;
  Vector u, v;  ///< tangent witness, orthonormal frame coordinates of build_g
  PlaneMaximum plane;
  std::size_t evaluations = 0;
};

struct SubmanifoldSearchOptions {
  SearchOptions inner{8, 0x5eed, 500, 1e-12};
  std::size_t starts = 2;         ///< starting directions per endpoint of [t1, t2]
  double min_step = 1e-4;         ///< pattern-search step on the sphere
  std::size_t max_evaluations = 40;
};

/// Joint ascent over t in [t1, t2], x_dir on the unit sphere of v and tangent
/// 2-planes. For a fixed plane the curvature is convex in sqrt(t) (the t
/// dependence enters through the Gauss term only), so the maximum over t is
/// attained at t1 or t2 and only the endpoints are searched.
SubmanifoldMaximum max_sectional_submanifold(const JMap& j, double c, double r, double t1, double t2,
                                             const SubmanifoldSearchOptions& opt = {});

ThresholdReport lambda_submanifold(const JMap& j, double r, double t1, double t2, double c_lo, double c_hi,
                                   double tol, const SubmanifoldSearchOptions& opt = {});

struct FamilyMember {
  double t = 0.0;
  JMap j;
};
struct FamilyRow {
  double t = 0.0;
  ThresholdReport report;
};
/// lambda_bisect per member. Members must be isospectral to the first one
/// unless `force` is set; otherwise ValidationError.
std::vector<FamilyRow> family_scan(const std::vector<FamilyMember>& family, double c_lo, double c_hi, double tol,
                                   const SearchOptions& opt = {}, bool force = false);

/// Header `t,lambda,c_low,c_high,K_max_at_low,restarts`.
void write_family_csv(std::ostream& os, const std::vector<FamilyRow>& rows);

}  // namespace solvgeo
