#pragma once

#include <optional>

#include "solvgeo/curvature.hpp"

namespace solvgeo {

/// Einstein criteria for g(j, 1), evaluated on gram-orthonormal bases:
///   (i)  <Z_i, Z_l> + tr(j(Z_i) j(Z_l)) / m = 0 for all i, l
///   (ii) sum_i j(Z_i)^2 is a multiple of the identity.
struct EinsteinReport {
  double condition_i_residual = 0.0;
  double condition_ii_residual = 0.0;  ///< |sum_i j(Z_i)^2 - s Id|_F, s = trace / m
  double casimir_scalar = 0.0;         ///< s
  bool condition_i = false;
  bool condition_ii = false;
  double ricci_eigen_spread = 0.0;     ///< max - min eigenvalue of Ric of g(j, 1)
  [[nodiscard]] bool einstein() const { return condition_i && condition_ii; }
  /// Both criteria hold exactly when the computed Ricci tensor is a multiple of the metric.
  [[nodiscard]] bool consistent(double spread_tol = 1e-8) const {
    return einstein() == (ricci_eigen_spread < spread_tol);
  }
};

EinsteinReport einstein_check(const JMap& j, double tol = 1e-9);

/// Scalar curvature of the hypersurface N_r(j) = {|X| = r} of the nilpotent
/// group with algebra h(j), at a point over x (v coordinates, |x| = r).
struct ScalarCurvatureN {
  double closed_form = 0.0;  ///< tau + (m-1)(m-2)/r^2 - (1/2) sum_i <j(Z_i)^2 x^, x^>
  double gauss = 0.0;        ///< tau - 2 Ric(n,n) + (tr B)^2 - tr B^2 with B from the connection
  double tau = 0.0;          ///< scalar curvature of h(j)
  double ricci_nn = 0.0;
  double trace_term = 0.0;   ///< (tr B)^2 - tr B^2
};

/// Throws std::domain_error when |x| differs from r by more than 1e-9 r.
ScalarCurvatureN scalar_curvature_N(const JMap& j, double r, const Vector& x);

/// Criterion (ii) of einstein_check; decides whether N(j) has constant scalar curvature.
bool constant_scalar_verdict(const JMap& j, double tol = 1e-9);

struct ScalarSampleStats {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  std::size_t samples = 0;
  [[nodiscard]] double range() const { return max - min; }
};
/// closed-form scalar curvature of N_r(j) at `samples` random points (fixed seed).
ScalarSampleStats sample_scalar_curvature_N(const JMap& j, double r, std::size_t samples,
                                            std::uint64_t seed);

struct DamekWitness {
  double bracket_norm = 0.0;           ///< |[X, Y]| in h(j)
  std::size_t orbit_intersection = 0;  ///< dim(j(z)X ∩ j(z)Y)
  bool bracket_vanishes = false;
  bool orbits_meet = false;
  std::optional<double> span_sectional;  ///< K(span{X,Y}) in g(j,1), when both hold
  /// When both hold: the plane span{X + a Z, Y - a Z'} with j(Z)X = j(Z')Y,
  /// X, Y rescaled to unit length and a maximizing the curvature. Vectors in
  /// the orthonormal frame of build_g(j, 1).
  std::optional<double> plane_sectional;
  double mixing = 0.0;  ///< a, in units of |X| / |Z|
  Vector plane_u, plane_v;
  [[nodiscard]] bool holds() const { return bracket_vanishes && orbits_meet; }
  [[nodiscard]] bool zero_curvature() const { return plane_sectional && std::abs(*plane_sectional) < 1e-10; }
};

/// X, Y in v coordinates; throws ValidationError if dependent.
DamekWitness damek_witness(const JMap& j, const Vector& x, const Vector& y);

}  // namespace solvgeo
