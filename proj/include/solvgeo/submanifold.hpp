#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "solvgeo/curvature.hpp"

namespace solvgeo {

/// Point of M(j,c,r) = {|X| = r} in the solvable group of g(j,c), given by the
/// base coordinate t > 0, the fibre-sphere direction x_dir = X/r (v
/// coordinates, gram_v unit) and the radius r.
struct SubmanifoldPoint {
  double t = 1.0;
  Vector x_dir;
  double r = 1.0;
};

/// Throws ValidationError unless t > 0, r > 0 and |x_dir| = 1.
void require_valid_point(const JMap& j, const SubmanifoldPoint& p);

/// Unit normal X/r in the orthonormal frame of build_g(j, c): v block only,
/// A component zero (the radius does not vary with t).
Vector unit_normal(const JMap& j, const SubmanifoldPoint& p);

/// Orthonormal tangent frame {v ⊖ x_dir} ∪ {z} ∪ {A/|A|} as columns in the
/// orthonormal frame coordinates of build_g(j, c) (any c; the frame does not
/// depend on c). The v part comes from Gram-Schmidt of the standard vectors
/// against x_dir, in order.
Matrix tangent_frame(const JMap& j, const SubmanifoldPoint& p);

/// Shape operator B(U) = nabla_U n in the tangent frame.
struct WeingartenData {
  Matrix b;      ///< (m - 1 + k + 1) square, rows/cols follow tangent_frame
  Matrix frame;  ///< tangent_frame(j, p)
  SubmanifoldPoint point;
};

/// Closed form B(Y) = (sqrt(t)/r) Y + [Y, x]/2, B(Z) = -j(Z)x/2, B(A) = 0,
/// with x = x_dir. No c enters the computation.
WeingartenData weingarten(const JMap& j, const SubmanifoldPoint& p);

/// B from the connection of g(j,c) plus a five-point finite-difference
/// derivative of the normal's coefficients along the invariant fields.
Matrix weingarten_oracle(const JMap& j, double c, const SubmanifoldPoint& p, double h = 1e-3);

/// Ambient curvature of g(j,c) shared by many submanifold evaluations.
class SubmanifoldGeometry {
 public:
  SubmanifoldGeometry(const JMap& j, double c);

  [[nodiscard]] const JMap& jmap() const { return j_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] const CurvatureData& ambient() const { return curv_; }

  /// Intrinsic curvature tensor of M in the tangent frame (Gauss equation):
  /// R~_abcd = R_abcd + B_ad B_bc - B_ac B_bd.
  [[nodiscard]] std::vector<double> tangent_curvature(const WeingartenData& w) const;

  /// Sectional curvature of span{u, v}, u and v given in g-frame coordinates.
  [[nodiscard]] double sectional(const SubmanifoldPoint& p, const Vector& u, const Vector& v) const;

  struct ScalarParts {
    double value = 0.0;
    double ambient_scalar = 0.0;
    double ricci_nn = 0.0;
    double trace_term = 0.0;  ///< (tr B)^2 - tr(B^2)
  };
  /// rho - 2 Ric(n,n) + (tr B)^2 - tr(B^2).
  [[nodiscard]] ScalarParts scalar(const SubmanifoldPoint& p) const;

 private:
  JMap j_;
  double c_;
  CurvatureData curv_;
};

double sub_sectional(const JMap& j, double c, const SubmanifoldPoint& p, const Vector& u, const Vector& v);
SubmanifoldGeometry::ScalarParts sub_scalar(const JMap& j, double c, const SubmanifoldPoint& p);

struct ProfileRow {
  double t = 0.0, rho_min = 0.0, rho_max = 0.0, rho_mean = 0.0;
};
/// Scalar curvature over t_grid (strictly increasing), sampling `samples`
/// directions x_dir from a fixed seed; the same directions are used for all t.
std::vector<ProfileRow> scalar_profile(const JMap& j, double c, double r, const std::vector<double>& t_grid,
                                       std::size_t samples = 64, std::uint64_t seed = 1);
/// Header `t,rho_min,rho_max,rho_mean`, 17 significant digits.
void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows);

}  // namespace solvgeo
